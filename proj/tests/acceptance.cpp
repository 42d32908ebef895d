// One line per acceptance criterion; exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

#include "superkern/harish.hpp"
#include "superkern/zassenhaus.hpp"

using namespace superkern;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

EnvelopePtr env(AlgebraPtr g) { return std::make_shared<const Envelope>(std::move(g)); }

EnvElement random_element(const Envelope& U, std::mt19937& rng) {
    const auto& g = U.algebra();
    std::uniform_int_distribution<std::size_t> gen(0, g.dim() - 1);
    std::uniform_int_distribution<unsigned> len(0, 4);
    std::uniform_int_distribution<std::uint32_t> coef(1, g.p() - 1);
    EnvElement u = U.zero();
    for (int t = 0; t < 2; ++t) {
        std::vector<std::size_t> w(len(rng));
        for (auto& x : w) x = gen(rng);
        u = U.add(u, U.straighten(w, Elem{coef(rng)}));
    }
    return u;
}

Outcome pbw_soundness() {
    std::size_t triples = 0;
    for (auto [fam, m, n] : {std::tuple{"osp", 1, 2}, std::tuple{"gl", 1, 1}})
        for (std::uint32_t p : {3u, 5u}) {
            auto g = make_builtin(fam, m, n, p);
            Envelope U(g);
            std::mt19937 rng(7 * p + m);
            for (int t = 0; t < 200; ++t, ++triples) {
                auto a = random_element(U, rng), b = random_element(U, rng), c = random_element(U, rng);
                if (U.multiply(U.multiply(a, b), c) != U.multiply(a, U.multiply(b, c)))
                    return {false, std::string(fam) + " p=" + std::to_string(p) + " a=" + U.format(a)};
            }
            for (std::size_t i = 0; i < g->dim(); ++i)
                for (std::size_t j = 0; j < g->dim(); ++j) {
                    auto xy = U.multiply(U.gen(i), U.gen(j)), yx = U.multiply(U.gen(j), U.gen(i));
                    auto lift = (g->is_odd(i) && g->is_odd(j)) ? U.add(xy, yx) : U.sub(xy, yx);
                    if (lift != U.from_vec(g->bracket(i, j))) return {false, "bracket lift " + g->basis_name(i) + "," + g->basis_name(j)};
                }
        }
    return {true, std::to_string(triples) + " triples"};
}

Outcome reduced_dims() {
    std::string d;
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)}) {
            ReducedAlgebra A(env(g), chi);
            if (A.dim() != 4u * p * p * p) return {false, "osp12 " + chi.name + " dim " + std::to_string(A.dim())};
        }
        auto gl = make_builtin("gl", 1, 1, p);
        ReducedAlgebra B(env(gl), zero_character(*gl));
        if (B.dim() != 4u * p * p) return {false, "gl11 dim " + std::to_string(B.dim())};
        d += (d.empty() ? "" : ", ") + std::to_string(4 * p * p * p) + "/" + std::to_string(4 * p * p);
    }
    return {true, "osp12/gl11: " + d};
}

Outcome verma_dims() {
    std::size_t count = 0;
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)})
            for (auto& w : lambda_set(*g, chi).weights) {
                auto Z = baby_verma(g, chi, w);
                if (Z.dim() != 2 * p || !check_rep(Z).ok()) return {false, Z.name};
                ++count;
            }
    }
    return {true, std::to_string(count) + " modules"};
}

Outcome census_check() {
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        const std::string at = " at p=" + std::to_string(p);
        auto c1 = census(g, osp_chi1(*g));
        if (c1.classes != p || c1.rows.size() != p) return {false, "chi1 classes" + at};
        for (auto& r : c1.rows)
            if (!r.irreducible || r.type != EndoType::M) return {false, "chi1 row not irreducible of type M" + at};
        auto c0 = census(g, osp_chi0(*g));
        if (c0.classes != (p + 1) / 2) return {false, "chi0 classes" + at};
        for (auto& a : c0.rows) {
            const auto la = a.lambda[0].v;
            if ((a.type == EndoType::Q) != (la == (p - 1) / 2)) return {false, "type Q placement" + at};
            for (auto& b : c0.rows)
                if ((a.cls == b.cls) != (b.lambda[0].v == la || b.lambda[0].v == p - 1 - la)) return {false, "pairing" + at};
        }
        std::set<std::size_t> dims, want;
        const auto zero = zero_character(*g);
        for (auto& w : lambda_set(*g, zero).weights) dims.insert(simple_head(baby_verma(g, zero, w)).dim());
        for (std::uint32_t k = 0; k < p; ++k) want.insert(2 * k + 1);
        if (dims != want) return {false, "head dimensions" + at};
    }
    return {true, "chi1: p classes, chi0: (p+1)/2 classes, heads {1,3,...,2p-1}"};
}

unsigned budgeted_degree(std::uint32_t p) { return p == 3 ? 2 * p : p + 2; }

Outcome evenness() {
    for (std::uint32_t p : {3u, 5u}) {
        auto U = env(osp12(p));
        for (unsigned d = 0; d <= budgeted_degree(p); ++d)
            for (bool tw : {false, true})
                if (!slice_is_even(*U, centralizer_slice(*U, d, tw)))
                    return {false, std::string(tw ? "anticenter" : "center") + " p=" + std::to_string(p) + " d=" + std::to_string(d)};
    }
    return {true, "d<=6 at p=3, d<=7 at p=5"};
}

Outcome identities() {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        auto U = env(osp12(p));
        auto r = check_special_identities(*U, special_elements(*U));
        if (!r.ok()) return {false, "p=" + std::to_string(p) + ": " + r.witness};
    }
    return {true, "p=3,5,7"};
}

Outcome generation() {
    for (std::uint32_t p : {3u, 5u}) {
        auto U = env(osp12(p));
        for (unsigned d = 0; d <= budgeted_degree(p); ++d) {
            if (!center_generation_check(*U, d).equal()) return {false, "center p=" + std::to_string(p) + " d=" + std::to_string(d)};
            if (d >= 2 && !anticenter_check(*U, d).equal())
                return {false, "anticenter p=" + std::to_string(p) + " d=" + std::to_string(d)};
            if (d < 2 && centralizer_slice(*U, d, true).dim() != 0) return {false, "anticenter below degree 2"};
        }
    }
    return {true, "center and anticenter slices match"};
}

Outcome harish_chandra() {
    bool literal = true, invariant = true;
    std::map<std::string, std::string> first;  // failing check -> first witness
    for (std::uint32_t p : {3u, 5u}) {
        auto U = env(osp12(p));
        const auto& g = U->algebra_ptr();
        auto slice = centralizer_slice(*U, 2 * p, false);
        for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)}) {
            auto r = verify_hc(U, slice, chi, lambda_set(*g, chi).weights);
            for (auto& f : r.failures)
                first.try_emplace(f.check, "chi=" + chi.name + " p=" + std::to_string(p) + " at " + f.element);
            literal = literal && r.ok();
            invariant = invariant && r.ok_invariant();
        }
    }
    std::string why;
    for (auto& [check, w] : first) why += (why.empty() ? "" : "; ") + check + " " + w;
    return {literal, (literal ? std::string("literal reading holds") : "literal reading fails (" + why + ")") +
                         "; invariant reading " + (invariant ? "holds" : "fails")};
}

Outcome skew() {
    auto U = env(osp12(3));
    for (unsigned d = 0; d <= 6; ++d)
        if (!skew_center_check(U, d).ok()) return {false, "skew center d=" + std::to_string(d)};
    std::string counts;
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)}) {
            auto v = even_category_check(g, chi);
            if (!v.ok()) return {false, "even category " + chi.name + " p=" + std::to_string(p)};
            if (p == 3) counts += (counts.empty() ? "" : " ") + chi.name + ":" + std::to_string(v.objects);
        }
    }
    return {true, "d<=6; even category sizes at p=3 " + counts};
}

Outcome zassenhaus() {
    auto U = env(osp12(3));
    auto H = hypersurface(*U);
    if (H.t_degree != 3 || !H.none_below || !H.principal()) return {false, "relation search"};
    auto L = locus_report(U, H);
    if (!L.identity_holds || !L.consistent_flags) return {false, L.diff};
    return {true, "F = " + H.F.format(U->field()) + "; singular points computed " + std::to_string(L.singular_points.size()) +
                      " vs claimed " + std::to_string(L.claimed_singular_count) +
                      " (L(lambda), L(p-1-lambda) share a point; logged, not failed)"};
}

Outcome domain() {
    Envelope U(make_builtin("gl", 1, 1, 3));
    auto E12 = U.gen("E12");
    if (!U.multiply(E12, E12).is_zero()) return {false, "E12^2 != 0"};
    auto z = centralizer_slice(U, 4, false);
    for (auto& a : z.elements)
        for (auto& b : z.elements)
            if (U.multiply(a, b).is_zero()) return {false, "zero product " + U.format(a) + " * " + U.format(b)};
    return {true, std::to_string(z.dim() * z.dim()) + " products nonzero, E12^2 = 0"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"PBW associativity and bracket lift", pbw_soundness},
        {"dim U_chi = 4p^3 (osp12), 4p^2 (gl11)", reduced_dims},
        {"baby Verma dimension 2p", verma_dims},
        {"census at p=3,5", census_check},
        {"center and anticenter evenness", evenness},
        {"S identities", identities},
        {"generation of center and anticenter", generation},
        {"Harish-Chandra suite", harish_chandra},
        {"skew ring center and even category", skew},
        {"Zassenhaus hypersurface and smooth locus at p=3", zassenhaus},
        {"gl(1|1) center has no zero products", domain},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-4s %2zu  %-48s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, s, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
