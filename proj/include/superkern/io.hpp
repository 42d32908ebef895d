#pragma once

// JSON ingestion and emission, plus the on-disk result cache.

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "superkern/central.hpp"
#include "superkern/repmod.hpp"

namespace superkern {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "superkern-0.1.0";

// ---------------------------------------------------------------------------
// scalars

inline json field_json(const Field& F) {
    return json{{"p", F.characteristic()}, {"degree", F.degree()}, {"modulus", F.modulus()}};
}

/// Coefficient array, low degree first.
inline json elem_json(const Field& F, Elem a) { return F.coeffs(a); }

inline json vec_json(const Field& F, const Vec& v) {
    json out = json::array();
    for (auto a : v) out.push_back(elem_json(F, a));
    return out;
}

inline json matrix_json(const Field& F, const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_json(F, m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// algebra specs

namespace detail {

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class SpecReader {
public:
    explicit SpecReader(const std::string& text) : text_(text) {}

    [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
        std::string where = "field '" + field + "'";
        // point at the first occurrence of the key when it is in the text
        const auto leaf = field.substr(field.find_last_of('.') + 1);
        const auto pos = text_.find("\"" + leaf + "\"");
        if (pos != std::string::npos) {
            auto [l, c] = line_col(text_, pos);
            where = "line " + std::to_string(l) + ", column " + std::to_string(c) + ", " + where;
        }
        throw SpecError(where + ": " + msg);
    }

    const json& need(const json& obj, const std::string& key, const std::string& path) const {
        if (!obj.contains(key)) fail(path.empty() ? key : path + "." + key, "missing");
        return obj.at(key);
    }

    long long integer(const json& v, const std::string& path) const {
        if (!v.is_number_integer()) fail(path, "expected an integer, got " + std::string(v.type_name()));
        return v.get<long long>();
    }

    std::vector<std::string> names(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array of names");
        std::vector<std::string> out;
        for (auto& x : v) {
            if (!x.is_string()) fail(path, "basis names must be strings");
            out.push_back(x.get<std::string>());
        }
        return out;
    }

    std::size_t index(const json& v, std::size_t n, const std::string& path) const {
        const long long i = integer(v, path);
        if (i < 0 || static_cast<std::size_t>(i) >= n) fail(path, "basis index " + std::to_string(i) + " out of range");
        return static_cast<std::size_t>(i);
    }

    /// [[coeff, idx], ...] -> dense vector mod p.
    Vec combination(const json& v, std::size_t n, std::uint32_t p, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected a list of [coeff, index] pairs");
        Vec out(n, Elem{0});
        for (auto& t : v) {
            if (!t.is_array() || t.size() != 2) fail(path, "expected a [coeff, index] pair");
            const long long c = integer(t[0], path);
            const std::size_t i = index(t[1], n, path);
            const long long r = ((c % static_cast<long long>(p)) + p) % p;
            out[i] = Elem{static_cast<std::uint32_t>((out[i].v + r) % p)};
        }
        return out;
    }

private:
    const std::string& text_;
};

}  // namespace detail

/// Reads the algebra-spec format.  Syntax errors carry line and column;
/// semantic errors name the offending field.  Brackets not listed are zero;
/// a pair listed in one order only is completed by supersymmetry.
inline SuperAlgebraData parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw SpecError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": JSON syntax error");
    }
    detail::SpecReader rd(text);
    if (!doc.is_object()) rd.fail("<root>", "expected an object");

    SuperAlgebraData d;
    d.name = doc.value("name", std::string("user"));
    const long long p = rd.integer(rd.need(doc, "p", ""), "p");
    if (p <= 2 || p > 1000 || !detail::is_prime(static_cast<std::uint32_t>(p))) rd.fail("p", "must be an odd prime");
    d.p = static_cast<std::uint32_t>(p);
    d.even_names = rd.names(rd.need(doc, "even_basis", ""), "even_basis");
    d.odd_names = rd.names(doc.value("odd_basis", json::array()), "odd_basis");
    const std::size_t s = d.even_names.size(), n = s + d.odd_names.size();
    if (n == 0) rd.fail("even_basis", "empty basis");
    if (n > kMaxDim) rd.fail("even_basis", "dimension exceeds " + std::to_string(kMaxDim));

    d.brackets.assign(n, std::vector<Vec>(n, Vec(n, Elem{0})));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    const json& br = doc.value("brackets", json::object());
    if (!br.is_object()) rd.fail("brackets", "expected an object keyed by \"i,j\"");
    for (auto& [key, val] : br.items()) {
        const std::string path = "brackets." + key;
        std::size_t i = 0, j = 0;
        char comma = 0;
        std::istringstream ks(key);
        if (!(ks >> i >> comma >> j) || comma != ',' || !ks.eof()) rd.fail(path, "key must look like \"i,j\"");
        if (i >= n || j >= n) rd.fail(path, "basis index out of range");
        d.brackets[i][j] = rd.combination(val, n, d.p, path);
        given[i][j] = true;
    }
    const Field& F = *Field::make(d.p, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!given[i][j] && given[j][i]) {
                // [x_i, x_j] = -(-1)^{|i||j|} [x_j, x_i]
                const bool both_odd = i >= s && j >= s;
                for (std::size_t k = 0; k < n; ++k)
                    d.brackets[i][j][k] = both_odd ? d.brackets[j][i][k] : F.neg(d.brackets[j][i][k]);
            }

    const json& pm = rd.need(doc, "p_map", "");
    if (!pm.is_object()) rd.fail("p_map", "expected an object keyed by even index");
    d.p_map.assign(s, Vec(n, Elem{0}));
    std::vector<bool> have(s, false);
    for (auto& [key, val] : pm.items()) {
        const std::string path = "p_map." + key;
        std::size_t i = 0;
        std::istringstream ks(key);
        if (!(ks >> i) || !ks.eof()) rd.fail(path, "key must be an even basis index");
        if (i >= s) rd.fail(path, "p_map is defined on even elements only");
        d.p_map[i] = rd.combination(val, n, d.p, path);
        have[i] = true;
    }
    for (std::size_t i = 0; i < s; ++i)
        if (!have[i]) rd.fail("p_map", "no value for even index " + std::to_string(i));

    if (doc.contains("triangular")) {
        const json& tr = doc.at("triangular");
        if (!tr.is_object()) rd.fail("triangular", "expected an object");
        Triangular t;
        auto block = [&](const char* key, std::vector<std::size_t>& out) {
            const json& v = tr.value(key, json::array());
            if (!v.is_array()) rd.fail(std::string("triangular.") + key, "expected an index list");
            for (auto& x : v) out.push_back(rd.index(x, n, std::string("triangular.") + key));
        };
        block("neg_even", t.neg_even);
        block("neg_odd", t.neg_odd);
        block("toral", t.toral);
        block("pos_odd", t.pos_odd);
        block("pos_even", t.pos_even);
        d.triangular = t;
    }
    if (doc.contains("weights")) {
        const json& w = doc.at("weights");
        if (!w.is_array() || w.size() != n) rd.fail("weights", "expected one weight per basis element");
        for (auto& row : w) {
            if (!row.is_array()) rd.fail("weights", "expected integer lists");
            std::vector<long long> r;
            for (auto& x : row) r.push_back(rd.integer(x, "weights"));
            d.weights.push_back(r);
        }
    }
    return d;
}

/// Canonical form (input to cache keys); round-trips through parse_spec.
inline json spec_json(const SuperAlgebraData& d) {
    const std::size_t n = d.even_names.size() + d.odd_names.size();
    auto comb = [&](const Vec& v) {
        json out = json::array();
        for (std::size_t k = 0; k < n; ++k)
            if (v[k].v) out.push_back({v[k].v, k});
        return out;
    };
    json j{{"name", d.name}, {"p", d.p}, {"even_basis", d.even_names}, {"odd_basis", d.odd_names}};
    json br = json::object();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto c = comb(d.brackets[a][b]);
            if (!c.empty()) br[std::to_string(a) + "," + std::to_string(b)] = c;
        }
    j["brackets"] = br;
    json pm = json::object();
    for (std::size_t a = 0; a < d.p_map.size(); ++a) pm[std::to_string(a)] = comb(d.p_map[a]);
    j["p_map"] = pm;
    if (d.triangular)
        j["triangular"] = {{"neg_even", d.triangular->neg_even}, {"neg_odd", d.triangular->neg_odd},
                           {"toral", d.triangular->toral},       {"pos_odd", d.triangular->pos_odd},
                           {"pos_even", d.triangular->pos_even}};
    if (!d.weights.empty()) j["weights"] = d.weights;
    return j;
}

// ---------------------------------------------------------------------------
// U(g) elements, slices, modules

inline json element_json(const Envelope& U, const EnvElement& u) {
    const auto& g = U.algebra();
    json terms = json::array();
    for (auto& [m, c] : u.terms()) {
        json mono = json::object();
        for (std::size_t i = 0; i < g.dim(); ++i)
            if (m.e[i]) mono[g.basis_name(i)] = m.e[i];
        terms.push_back({{"monomial", mono}, {"coeff", elem_json(U.field(), c)}});
    }
    return json{{"text", U.format(u)}, {"terms", terms}};
}

inline json slice_json(const Envelope& U, const Slice& s) {
    json basis = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        json e = element_json(U, s.elements[i]);
        if (i < s.labels.size() && !s.labels[i].empty()) e["label"] = s.labels[i];
        basis.push_back(e);
    }
    return json{{"degree", s.degree}, {"dim", s.dim()}, {"basis", basis}};
}

inline json rep_json(const MatrixRep& V) {
    const auto& g = *V.algebra;
    json act = json::object();
    for (std::size_t i = 0; i < g.dim(); ++i) act[g.basis_name(i)] = matrix_json(*V.field, V.action[i]);
    return json{{"name", V.name}, {"field", field_json(*V.field)}, {"dim", V.dim()}, {"parity", V.parity}, {"action", act}};
}

// ---------------------------------------------------------------------------
// cache

namespace detail {

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace detail

/// Content-addressed cache.  Each entry is <key>.json (payload) next to
/// <key>.meta.json (checksum, timestamp, runtime); both are written to a
/// temporary name and renamed into place.
class ResultCache {
public:
    static constexpr const char* kEnvVar = "SUPERKERN_CACHE";

    explicit ResultCache(std::filesystem::path root) : root_(std::move(root)) {}

    static ResultCache from_environment() {
        const char* env = std::getenv(kEnvVar);
        return ResultCache(env && *env ? env : ".superkern-cache");
    }

    const std::filesystem::path& root() const { return root_; }

    static std::string key(const json& spec, const std::string& op, const json& params,
                           const std::string& version = kArtifactVersion) {
        json k{{"spec", spec}, {"op", op}, {"params", params}, {"version", version}};
        return detail::sha256_hex(k.dump());
    }

    void store(const std::string& k, const std::string& payload, double runtime_s = 0) const {
        std::filesystem::create_directories(root_);
        const json meta{{"sha256", detail::sha256_hex(payload)},
                        {"stored_at", std::chrono::duration_cast<std::chrono::seconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count()},
                        {"runtime_s", runtime_s},
                        {"version", kArtifactVersion}};
        atomic_write(payload_path(k), payload);
        atomic_write(meta_path(k), meta.dump());
    }

    enum class Status { Hit, Miss, Corrupt };

    /// On a checksum mismatch the entry is evicted and Corrupt returned.
    Status load(const std::string& k, std::string& out) const {
        const auto pp = payload_path(k), mp = meta_path(k);
        if (!std::filesystem::exists(pp) || !std::filesystem::exists(mp)) return Status::Miss;
        std::string payload = detail::slurp(pp);
        json meta = json::parse(detail::slurp(mp), nullptr, false);
        if (meta.is_discarded() || !meta.contains("sha256") || meta["sha256"] != detail::sha256_hex(payload)) {
            evict(k);
            return Status::Corrupt;
        }
        out = std::move(payload);
        return Status::Hit;
    }

    void evict(const std::string& k) const {
        std::error_code ec;
        std::filesystem::remove(payload_path(k), ec);
        std::filesystem::remove(meta_path(k), ec);
    }

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        if (!std::filesystem::exists(root_)) return out;
        for (auto& e : std::filesystem::directory_iterator(root_)) {
            const auto name = e.path().filename().string();
            if (name.size() > 10 && name.ends_with(".meta.json")) out.push_back(name.substr(0, name.size() - 10));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::filesystem::path payload_path(const std::string& k) const { return root_ / (k + ".json"); }
    std::filesystem::path meta_path(const std::string& k) const { return root_ / (k + ".meta.json"); }

    static void atomic_write(const std::filesystem::path& p, const std::string& data) {
        static thread_local std::mt19937_64 rng{std::random_device{}()};
        auto tmp = p;
        tmp += ".tmp" + std::to_string(rng());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
            out << data;
            out.flush();
            if (!out) throw std::runtime_error("short write to " + tmp.string());
        }
        std::filesystem::rename(tmp, p);
    }

    std::filesystem::path root_;
};

}  // namespace superkern
