// superkern: command-line front end.  Every verb builds a JSON report, the
// canonical output; csv and text are projections of its "table" block.

#include <CLI11.hpp>

#include <chrono>
#include <future>
#include <iostream>
#include <regex>

#include "superkern/harish.hpp"
#include "superkern/io.hpp"
#include "superkern/zassenhaus.hpp"

using namespace superkern;

namespace {

struct Options {
    std::string verb;
    std::string algebra = "osp12";
    std::string spec_file;
    std::string spec_text;  // inline spec, used when re-running a cached command
    std::string action = "verify";
    std::uint32_t p = 3;
    int degree = -1;
    std::string chi = "zero";
    std::size_t lambda = 0;
    std::string format = "json";
    std::string cache = "use";
    std::string reading = "invariant";
    std::size_t budget = kDefaultBudget;
};

/// Collects assertions and the table projection alongside the result body.
class Report {
public:
    json result = json::object();

    void check(const std::string& name, bool passed, const std::string& detail = "") {
        json a{{"name", name}, {"passed", passed}};
        if (!detail.empty()) a["detail"] = detail;
        assertions_.push_back(a);
    }
    void note(const std::string& key, json value) { notes_[key] = std::move(value); }
    void columns(std::vector<std::string> c) { columns_ = std::move(c); }
    void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

    json finish(const json& command) const {
        bool ok = true;
        for (auto& a : assertions_) ok = ok && a["passed"].get<bool>();
        json doc{{"schema_version", kSchemaVersion}, {"artifact_version", kArtifactVersion}, {"command", command}};
        doc["result"] = result;
        doc["table"] = {{"columns", columns_}, {"rows", rows_}};
        doc["assertions"] = assertions_;
        if (!notes_.empty()) doc["notes"] = notes_;
        doc["passed"] = ok;
        return doc;
    }

private:
    json assertions_ = json::array();
    json notes_ = json::object();
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

std::string yes(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// inputs

AlgebraPtr resolve_algebra(const Options& o) {
    if (!o.spec_text.empty()) return std::make_shared<const SuperAlgebra>(parse_spec(o.spec_text));
    if (!o.spec_file.empty()) {
        std::ifstream in(o.spec_file);
        if (!in) throw SpecError("cannot open spec file " + o.spec_file);
        std::ostringstream os;
        os << in.rdbuf();
        try {
            return std::make_shared<const SuperAlgebra>(parse_spec(os.str()));
        } catch (const SpecError& e) {
            throw SpecError(o.spec_file + ": " + e.what());
        }
    }
    static const std::regex re(R"(^(gl|sl|osp)(\d)(\d)$)");
    std::smatch m;
    if (!std::regex_match(o.algebra, m, re))
        throw SpecError("unknown algebra '" + o.algebra + "' (expected e.g. osp12, gl11, sl21, osp14)");
    return make_builtin(m[1], std::stoul(m[2]), std::stoul(m[3]), o.p);
}

PCharacter resolve_character(const SuperAlgebra& g, const std::string& tag) {
    if (tag == "zero") return zero_character(g);
    if (!detail::is_osp12(g)) throw std::invalid_argument("only --chi zero is available for this algebra");
    if (tag == "nilpotent") return osp_chi0(g);
    if (tag == "semisimple") return osp_chi1(g);
    throw std::invalid_argument("unknown --chi '" + tag + "' (zero, nilpotent, semisimple)");
}

std::size_t verma_dim_formula(const SuperAlgebra& g) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (g.block(i) == Block::NegEven) d *= g.p();
        if (g.block(i) == Block::NegOdd) d *= 2;
    }
    return d;
}

std::string lambda_text(const PCharacter& chi, const Weight& w) { return weight_label(*chi.field, w); }

// ---------------------------------------------------------------------------
// verbs

void run_validate(const AlgebraPtr& g, const Options&, Report& r) {
    auto v = validate(*g);
    r.columns({"check", "passed", "witness"});
    for (auto& c : v.checks) {
        r.check(c.name, c.passed, c.witness);
        r.row({c.name, yes(c.passed), c.witness});
    }
    r.result = {{"algebra", g->name()}, {"dim", g->dim()}, {"odd_dim", g->odd_dim()}, {"ok", v.ok()}};
}

void slice_table(const Envelope& U, const Slice& s, Report& r) {
    r.columns({"index", "label", "element"});
    for (std::size_t i = 0; i < s.dim(); ++i)
        r.row({std::to_string(i), i < s.labels.size() ? s.labels[i] : "", U.format(s.elements[i])});
}

void run_center(const AlgebraPtr& g, const Options& o, Report& r, bool twisted) {
    const auto U = std::make_shared<const Envelope>(g);
    const unsigned d = o.degree < 0 ? 2 * g->p() : static_cast<unsigned>(o.degree);
    const Slice s = centralizer_slice(*U, d, twisted, o.budget);
    r.result = slice_json(*U, s);
    slice_table(*U, s, r);
    r.check(twisted ? "anticenter slice is even" : "center slice is even", slice_is_even(*U, s));
    if (!detail::is_osp12(*g)) return;
    if (!twisted) {
        auto v = center_generation_check(*U, d, o.budget);
        r.check("center slice equals the <1, xi_e, xi_h, xi_f, S^2> slice", v.equal(), to_string(v.cmp.relation));
    } else if (d >= 2) {
        auto v = anticenter_check(*U, d, o.budget);
        r.check("anticenter slice equals S * (center slice, degree d-2)", v.equal(), to_string(v.cmp.relation));
    } else {
        r.check("anticenter slice is zero below degree 2", s.dim() == 0);
    }
}

void run_census(const AlgebraPtr& g, const Options& o, Report& r) {
    const auto chi = resolve_character(*g, o.chi);
    const std::uint32_t p = g->p();
    r.result["chi"] = {{"name", chi.name}, {"tag", to_string(chi.tag)}, {"field", field_json(*chi.field)}};
    auto lam = lambda_set(*g, chi);
    if (lam.weights.empty()) throw std::invalid_argument("Lambda(chi) is empty: " + lam.hint);

    if (chi.tag == OrbitTag::Zero) {
        // restricted case: one simple head per weight
        r.columns({"lambda", "verma_dim", "head_dim", "type"});
        json rows = json::array();
        std::set<std::size_t> dims;
        for (auto& w : lam.weights) {
            auto Z = baby_verma(g, chi, w);
            auto L = simple_head(Z);
            const auto t = endo_type(L);
            dims.insert(L.dim());
            rows.push_back({{"lambda", lambda_text(chi, w)}, {"verma_dim", Z.dim()}, {"head_dim", L.dim()}, {"type", to_string(t)}});
            r.row({lambda_text(chi, w), std::to_string(Z.dim()), std::to_string(L.dim()), to_string(t)});
        }
        r.result["rows"] = rows;
        if (detail::is_osp12(*g)) {
            std::set<std::size_t> want;
            for (std::uint32_t k = 0; k < p; ++k) want.insert(2 * k + 1);
            r.check("head dimensions are {1, 3, ..., 2p-1}", dims == want);
        }
        return;
    }

    const Census c = census(g, chi);
    r.columns({"class", "lambda", "members", "dim", "irreducible", "type", "iso_degree"});
    json rows = json::array();
    for (std::size_t k = 0; k < c.classes; ++k) {
        std::vector<std::string> members;
        const CensusRow* rep = nullptr;
        std::string degrees;
        for (auto& row : c.rows)
            if (row.cls == k) {
                if (!rep) rep = &row;
                members.push_back(lambda_text(chi, row.lambda));
                if (row.degree && &row != rep) degrees += (degrees.empty() ? "" : ",") + std::to_string(*row.degree);
            }
        std::string joined;
        for (auto& m : members) joined += (joined.empty() ? "" : " ") + m;
        rows.push_back({{"class", k}, {"lambda", members.front()}, {"members", members}, {"dim", rep->dim},
                        {"irreducible", rep->irreducible}, {"type", to_string(rep->type)}});
        r.row({std::to_string(k), members.front(), joined, std::to_string(rep->dim), yes(rep->irreducible),
               to_string(rep->type), degrees});
    }
    r.result["rows"] = rows;
    r.result["even_category_size"] = c.even_category_size();
    if (!detail::is_osp12(*g)) return;

    bool all_irr = true, all_m = true;
    for (auto& row : c.rows) {
        all_irr = all_irr && row.irreducible;
        all_m = all_m && row.type == EndoType::M;
    }
    if (chi.tag == OrbitTag::SemisimpleRegular) {
        r.check("p pairwise non-isomorphic classes", c.classes == p && c.rows.size() == p);
        r.check("every baby Verma is irreducible of type M", all_irr && all_m);
    } else {
        r.check("(p+1)/2 isomorphism classes", c.classes == (p + 1) / 2);
        bool pairing = true, q_where = true;
        for (auto& a : c.rows) {
            const std::uint32_t la = a.lambda[0].v;
            for (auto& b : c.rows)
                if ((a.cls == b.cls) != (b.lambda[0].v == la || b.lambda[0].v == p - 1 - la)) pairing = false;
            if ((a.type == EndoType::Q) != (la == (p - 1) / 2)) q_where = false;
        }
        r.check("lambda ~ p-1-lambda pairing", pairing);
        r.check("type Q exactly at (p-1)/2", q_where);
        r.check("every baby Verma is irreducible", all_irr);
    }
}

void run_verma(const AlgebraPtr& g, const Options& o, Report& r) {
    const auto chi = resolve_character(*g, o.chi);
    auto lam = lambda_set(*g, chi);
    if (lam.weights.empty()) throw std::invalid_argument("Lambda(chi) is empty: " + lam.hint);
    if (o.lambda >= lam.weights.size())
        throw std::invalid_argument("--lambda must index Lambda(chi), which has " + std::to_string(lam.weights.size()) + " elements");
    const auto& w = lam.weights[o.lambda];
    auto Z = baby_verma(g, chi, w);
    auto rc = check_rep(Z);
    auto irr = is_irreducible(Z);
    r.result = rep_json(Z);
    r.result["lambda"] = lambda_text(chi, w);
    r.result["irreducible"] = irr.irreducible;
    if (irr.irreducible) r.result["endo_type"] = to_string(endo_type(Z));
    r.check("module relations hold", rc.ok(), rc.witness);
    r.check("dimension matches the PBW count of n^-", Z.dim() == verma_dim_formula(*g));
    r.columns({"basis", "parity"});
    for (std::size_t i = 0; i < Z.dim(); ++i) r.row({"v" + std::to_string(i), std::to_string(Z.parity[i])});
}

void run_harish(const AlgebraPtr& g, const Options& o, Report& r) {
    if (!detail::is_osp12(*g)) throw std::invalid_argument("harish is implemented for osp12");
    const auto U = std::make_shared<const Envelope>(g);
    const unsigned d = o.degree < 0 ? 2 * g->p() : static_cast<unsigned>(o.degree);
    const Slice slice = centralizer_slice(*U, d, false, o.budget);
    const bool literal = o.reading == "literal";
    std::vector<std::future<HcReport>> jobs;
    for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)})
        jobs.push_back(std::async(std::launch::async, [&, chi] { return verify_hc(U, slice, chi, lambda_set(*g, chi).weights); }));
    r.columns({"chi", "weights", "slice_dim", "invariant_dim", "scalar", "scalar_inv", "injective", "injective_inv",
               "reflected", "invariance"});
    json out = json::array();
    for (auto& j : jobs) {
        HcReport h = j.get();
        json failures = json::array();
        for (auto& f : h.failures)
            failures.push_back({{"check", f.check}, {"element", f.element}, {"weight", f.weight}, {"detail", f.detail}});
        out.push_back({{"chi", h.chi},
                       {"weights", h.weights},
                       {"slice_dim", h.slice_dim},
                       {"invariant_dim", h.invariant_dim},
                       {"fixed_dim", h.fixed_dim},
                       {"scalar_identity", h.scalar_identity},
                       {"scalar_identity_invariant", h.scalar_identity_invariant},
                       {"injective", h.injective},
                       {"injective_invariant", h.injective_invariant},
                       {"reflected_verma", h.reflected_verma},
                       {"reflected_mode", h.reflected_mode},
                       {"shift_agrees", h.shift_agrees},
                       {"invariance", h.invariance},
                       {"invariance_other_sign", h.invariance_other_sign},
                       {"ok_literal", h.ok()},
                       {"ok_invariant", h.ok_invariant()},
                       {"failures", failures}});
        r.row({h.chi, std::to_string(h.weights), std::to_string(h.slice_dim), std::to_string(h.invariant_dim),
               yes(h.scalar_identity), yes(h.scalar_identity_invariant), yes(h.injective), yes(h.injective_invariant),
               h.reflected_mode, yes(h.invariance)});
        std::string first = h.failures.empty() ? "" : h.failures.front().check + " " + h.failures.front().element;
        r.check(h.chi + " (" + o.reading + " reading)", literal ? h.ok() : h.ok_invariant(), first);
    }
    r.result = {{"degree", d}, {"reading", o.reading}, {"characters", out}};
}

void run_relations(const AlgebraPtr& g, const Options& o, Report& r) {
    if (!detail::is_osp12(*g)) throw std::invalid_argument("relations is implemented for osp12");
    const auto U = std::make_shared<const Envelope>(g);
    const auto H = hypersurface(*U, 0, o.budget);
    const std::string Ftext = H.F.format(g->field());
    r.result = {{"F", Ftext},
                {"variables", H.F.vars},
                {"t_degree", H.t_degree},
                {"none_below", H.none_below},
                {"principal_bound", H.principal_bound},
                {"kernel_dim", H.kernel_dim},
                {"multiples", H.multiples}};
    r.columns({"quantity", "value"});
    r.row({"F", Ftext});
    r.row({"S2-degree", std::to_string(H.t_degree)});
    r.row({"kernel_dim", std::to_string(H.kernel_dim)});
    r.row({"multiples_of_F", std::to_string(H.multiples)});
    r.check("relation has S2-degree p", H.t_degree == g->p());
    r.check("no relation of lower S2-degree", H.none_below);
    r.check("relation ideal is principal at the search bound", H.principal());
}

void run_locus(const AlgebraPtr& g, const Options& o, Report& r) {
    if (!detail::is_osp12(*g)) throw std::invalid_argument("locus is implemented for osp12");
    const auto U = std::make_shared<const Envelope>(g);
    const auto H = hypersurface(*U, 0, o.budget);
    const auto L = locus_report(U, H);
    const Field& K = *L.field;
    auto point_text = [&](const std::vector<Elem>& pt) {
        std::string s = "(";
        for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? ", " : "") + K.format(pt[i]);
        return s + ")";
    };
    r.columns({"chi", "orbit", "lambda", "module", "dim", "type", "point", "max_dim", "smooth"});
    json rows = json::array();
    for (auto& row : L.rows) {
        json pt = json::array();
        for (auto e : row.point) pt.push_back(elem_json(K, e));
        rows.push_back({{"chi", row.chi}, {"orbit", to_string(row.tag)}, {"lambda", weight_label(K, row.lambda)},
                        {"module", row.module}, {"dim", row.dim}, {"type", to_string(row.type)}, {"point", pt},
                        {"max_dim", row.max_dim}, {"smooth", row.smooth}, {"on_hypersurface", row.on_hypersurface}});
        r.row({row.chi, to_string(row.tag), weight_label(K, row.lambda), row.module, std::to_string(row.dim),
               to_string(row.type), point_text(row.point), yes(row.max_dim), yes(row.smooth)});
    }
    bool on = true;
    for (auto& row : L.rows) on = on && row.on_hypersurface;
    r.result = {{"field", field_json(K)},
                {"F", H.F.format(g->field())},
                {"rows", rows},
                {"smooth_points", L.smooth_points.size()},
                {"singular_points", L.singular_points.size()},
                {"claimed_singular_points", L.claimed_singular_count}};
    r.check("every census point lies on F = 0", on);
    r.check("equal points carry equal smoothness", L.consistent_flags);
    r.check("smooth set = max-dimensional points over regular chi, plus the point of L((p-1)/2)", L.identity_holds, L.diff);
    // the count is reported, not asserted
    r.note("singular_point_count",
           {{"computed", L.singular_points.size()},
            {"claimed", L.claimed_singular_count},
            {"explanation", "L(lambda) and L(p-1-lambda) have the same central character, so their points coincide"}});
}

void run_skew(const AlgebraPtr& g, const Options& o, Report& r) {
    if (!detail::is_osp12(*g)) throw std::invalid_argument("skew is implemented for osp12");
    const auto U = std::make_shared<const Envelope>(g);
    const unsigned d = o.degree < 0 ? 2 * g->p() : static_cast<unsigned>(o.degree);
    r.columns({"item", "value", "passed"});
    json slices = json::array();
    for (unsigned k = 0; k <= d; ++k) {
        auto v = skew_center_check(U, k, o.budget);
        slices.push_back({{"degree", k}, {"skew_dim", v.skew_dim}, {"center_dim", v.center_dim}, {"anticenter_dim", v.anticenter_dim}});
        r.row({"degree " + std::to_string(k),
               std::to_string(v.skew_dim) + " = " + std::to_string(v.center_dim) + " + " + std::to_string(v.anticenter_dim), yes(v.ok())});
        r.check("skew center splits at degree " + std::to_string(k), v.ok());
    }
    std::vector<std::future<EvenCategoryVerdict>> jobs;
    for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)})
        jobs.push_back(std::async(std::launch::async, [g, chi] { return even_category_check(g, chi); }));
    json cats = json::array();
    for (auto& j : jobs) {
        auto v = j.get();
        cats.push_back({{"chi", v.chi}, {"type_m", v.type_m}, {"type_q", v.type_q}, {"objects", v.objects},
                        {"pairwise_distinct", v.pairwise_distinct}, {"q_self_flip", v.q_self_flip},
                        {"exhausts", v.exhausts}, {"round_trip", v.round_trip}});
        r.row({"even category " + v.chi, std::to_string(v.objects) + " simples (M " + std::to_string(v.type_m) + ", Q " +
                                             std::to_string(v.type_q) + ")", yes(v.ok())});
        r.check("even category for " + v.chi, v.ok());
    }
    r.result = {{"slices", slices}, {"even_category", cats}};
}

json compute(const AlgebraPtr& g, const Options& o, const json& command) {
    Report r;
    if (o.verb == "validate") run_validate(g, o, r);
    else if (o.verb == "center") run_center(g, o, r, false);
    else if (o.verb == "anticenter") run_center(g, o, r, true);
    else if (o.verb == "census") run_census(g, o, r);
    else if (o.verb == "verma") run_verma(g, o, r);
    else if (o.verb == "harish") run_harish(g, o, r);
    else if (o.verb == "locus") run_locus(g, o, r);
    else if (o.verb == "skew") run_skew(g, o, r);
    else if (o.verb == "relations") run_relations(g, o, r);
    else throw std::invalid_argument("unknown verb " + o.verb);
    return r.finish(command);
}

// ---------------------------------------------------------------------------
// output

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(const json& doc, const std::string& format, std::ostream& os) {
    if (format == "json") {
        os << doc.dump(2) << "\n";
        return;
    }
    const auto& cols = doc["table"]["columns"];
    const auto& rows = doc["table"]["rows"];
    if (format == "csv") {
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(cols[i]);
        os << "\n";
        for (auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << "\n";
        }
        return;
    }
    std::vector<std::size_t> w(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) w[i] = cols[i].get<std::string>().size();
    for (auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].get<std::string>().size());
    auto line = [&](const json& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string c = cells[i];
            os << (i ? "  " : "") << c << std::string(i + 1 < cells.size() ? w[i] - c.size() : 0, ' ');
        }
        os << "\n";
    };
    line(cols);
    json rule = json::array();
    for (auto x : w) rule.push_back(std::string(x, '-'));
    line(rule);
    for (auto& row : rows) line(row);
    os << "\n";
    for (auto& a : doc["assertions"]) {
        os << (a["passed"].get<bool>() ? "[pass] " : "[FAIL] ") << a["name"].get<std::string>();
        if (a.contains("detail") && !a["passed"].get<bool>()) os << "  (" << a["detail"].get<std::string>() << ")";
        os << "\n";
    }
    if (doc.contains("notes"))
        for (auto& [k, v] : doc["notes"].items()) os << "[note] " << k << ": " << v.dump() << "\n";
}

json command_json(const Options& o, const AlgebraPtr& g) {
    json c{{"verb", o.verb}, {"p", g->p()}};
    if (o.spec_file.empty() && o.spec_text.empty()) c["algebra"] = o.algebra;
    else c["spec"] = spec_json(g->to_data());
    if (o.degree >= 0) c["degree"] = o.degree;
    if (o.verb == "census" || o.verb == "verma") c["chi"] = o.chi;
    if (o.verb == "verma") c["lambda"] = o.lambda;
    if (o.verb == "harish") c["reading"] = o.reading;
    if (o.budget != kDefaultBudget) c["budget"] = o.budget;
    return c;
}

int run(const Options& o) {
    const AlgebraPtr g = resolve_algebra(o);
    const json command = command_json(o, g);
    const json spec = spec_json(g->to_data());
    ResultCache cache = ResultCache::from_environment();
    const std::string key = ResultCache::key(spec, o.verb, command);

    std::string payload;
    bool from_cache = false;
    if (o.cache == "use" || o.cache == "verify") {
        auto st = cache.load(key, payload);
        if (st == ResultCache::Status::Corrupt) std::cerr << "warning: corrupt cache entry " << key << " evicted, recomputing\n";
        from_cache = st == ResultCache::Status::Hit;
    }
    if (!from_cache || o.cache == "verify") {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string fresh = compute(g, o, command).dump();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (from_cache && fresh != payload) {
            std::cerr << "warning: cached entry " << key << " differs from recomputation, replaced\n";
            cache.evict(key);
        }
        if (o.cache == "verify") std::cerr << "cache verify: " << (from_cache && fresh == payload ? "identical" : from_cache ? "mismatch" : "no entry") << "\n";
        payload = fresh;
        if (o.cache != "off") cache.store(key, payload, secs);
    }
    const json doc = json::parse(payload);
    emit(doc, o.format, std::cout);
    return doc["passed"].get<bool>() ? 0 : 1;
}

Options options_from_command(const json& c) {
    Options o;
    o.verb = c.at("verb");
    o.p = c.at("p");
    if (c.contains("algebra")) o.algebra = c["algebra"];
    if (c.contains("spec")) o.spec_text = c["spec"].dump();
    o.degree = c.value("degree", -1);
    o.chi = c.value("chi", std::string("zero"));
    o.lambda = c.value("lambda", std::size_t{0});
    o.reading = c.value("reading", std::string("invariant"));
    o.budget = c.value("budget", kDefaultBudget);
    return o;
}

/// list, clear, or verify: recompute one random entry and compare bytes.
int run_cache(const Options& o) {
    ResultCache cache = ResultCache::from_environment();
    const auto keys = cache.keys();
    if (o.action == "list") {
        for (auto& k : keys) {
            std::string payload;
            if (cache.load(k, payload) == ResultCache::Status::Hit)
                std::cout << k << "  " << json::parse(payload)["command"].dump() << "\n";
        }
        return 0;
    }
    if (o.action == "clear") {
        for (auto& k : keys) cache.evict(k);
        std::cout << "removed " << keys.size() << " entries\n";
        return 0;
    }
    if (keys.empty()) {
        std::cout << "cache is empty\n";
        return 0;
    }
    std::mt19937_64 rng{std::random_device{}()};
    const std::string k = keys[rng() % keys.size()];
    std::string payload;
    if (cache.load(k, payload) != ResultCache::Status::Hit) {
        std::cerr << "warning: corrupt cache entry " << k << " evicted\n";
        return 1;
    }
    const json cmd = json::parse(payload)["command"];
    const Options r = options_from_command(cmd);
    const AlgebraPtr g = resolve_algebra(r);
    const std::string fresh = compute(g, r, cmd).dump();
    const bool same = fresh == payload;
    std::cout << k << "  " << cmd.dump() << "  " << (same ? "identical" : "MISMATCH") << "\n";
    if (!same) {
        std::cerr << "warning: entry " << k << " differs from recomputation, replaced\n";
        cache.store(k, fresh);
    }
    return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superkern: centers of enveloping algebras of restricted Lie superalgebras"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--algebra", o.algebra, "builtin: osp12, gl11, gl21, sl21, osp14, ...")->capture_default_str();
        sub->add_option("--spec", o.spec_file, "JSON algebra spec (overrides --algebra and --p)")->check(CLI::ExistingFile);
        sub->add_option("--p", o.p, "characteristic")->capture_default_str();
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
        sub->add_option("--cache", o.cache, "cache policy")->check(CLI::IsMember({"use", "refresh", "off", "verify"}))->capture_default_str();
        sub->add_option("--budget", o.budget, "work budget for slice solvers");
    };
    struct Verb {
        const char* name;
        const char* help;
        bool degree, chi, lambda, reading;
    };
    const Verb verbs[] = {
        {"validate", "check superalgebra axioms", false, false, false, false},
        {"center", "center slice of U(g) at a filtration degree", true, false, false, false},
        {"anticenter", "anticenter slice at a filtration degree", true, false, false, false},
        {"census", "baby Verma census for a p-character", false, true, false, false},
        {"verma", "one baby Verma module with its matrices", false, true, true, false},
        {"harish", "Harish-Chandra identities on the center slice", true, false, false, true},
        {"locus", "Zassenhaus variety points and smooth locus", false, false, false, false},
        {"skew", "skew group ring center and even category", true, false, false, false},
        {"relations", "minimal relation among center generators", false, false, false, false},
    };
    for (auto& v : verbs) {
        auto* sub = app.add_subcommand(v.name, v.help);
        common(sub);
        if (v.degree) sub->add_option("--degree,-d", o.degree, "filtration degree (default 2p)");
        if (v.chi)
            sub->add_option("--chi", o.chi, "p-character")->check(CLI::IsMember({"zero", "nilpotent", "semisimple"}))->capture_default_str();
        if (v.lambda) sub->add_option("--lambda", o.lambda, "index into Lambda(chi)")->capture_default_str();
        if (v.reading)
            sub->add_option("--reading", o.reading, "literal: all identities on the whole slice; invariant: on the G-invariant part")
                ->check(CLI::IsMember({"literal", "invariant"}))
                ->capture_default_str();
        sub->callback([&o, name = std::string(v.name)] { o.verb = name; });
    }
    auto* cache_cmd = app.add_subcommand("cache", "inspect or verify the result cache");
    cache_cmd->add_option("action", o.action, "list, clear, verify")->check(CLI::IsMember({"list", "clear", "verify"}))->capture_default_str();
    cache_cmd->callback([&o] { o.verb = "cache"; });
    CLI11_PARSE(app, argc, argv);

    try {
        if (o.verb == "cache") return run_cache(o);
        return run(o);
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
