#include <gtest/gtest.h>

#include "superkern/zassenhaus.hpp"

using namespace superkern;

namespace {

EnvelopePtr osp_env(std::uint32_t p) { return std::make_shared<const Envelope>(osp12(p)); }

}  // namespace

TEST(Special, Identities) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        auto U = osp_env(p);
        auto s = special_elements(*U);
        auto r = check_special_identities(*U, s);
        EXPECT_TRUE(r.ok()) << r.witness;
        EXPECT_TRUE(U->ad(U->algebra().index("e"), s.S).is_zero());
    }
    auto U = osp_env(3);
    EXPECT_EQ(U->format(special_elements(*U).S), "F*E + h - 1");
}

TEST(Special, BrokenOmegaIsCaught) {
    auto U = osp_env(5);
    auto s = special_elements(*U);
    s.Omega = U->add(s.Omega, U->one());
    EXPECT_FALSE(check_special_identities(*U, s).S2_plus_S);
}

TEST(Generation, CenterSlices) {
    for (unsigned d = 0; d <= 6; ++d) EXPECT_TRUE(center_generation_check(*osp_env(3), d).equal()) << "p=3 d=" << d;
    for (unsigned d = 0; d <= 7; ++d) EXPECT_TRUE(center_generation_check(*osp_env(5), d).equal()) << "p=5 d=" << d;
    EXPECT_EQ(center_generation_check(*osp_env(5), 4).dim, 3u);  // 1, S^2, S^4
}

TEST(Generation, AnticenterIsSTimesCenter) {
    for (unsigned d = 2; d <= 6; ++d) EXPECT_TRUE(anticenter_check(*osp_env(3), d).equal()) << "p=3 d=" << d;
    for (unsigned d = 2; d <= 7; ++d) EXPECT_TRUE(anticenter_check(*osp_env(5), d).equal()) << "p=5 d=" << d;
    auto U = osp_env(3);
    EXPECT_EQ(anticenter_check(*U, 2).dim, 1u);
    EXPECT_EQ(centralizer_slice(*U, 1, true).dim(), 0u);
    EXPECT_EQ(anticenter_check(*U, 5).dim, 5u);  // S, S^3, and S times the three xi
}

TEST(Hypersurface, MinimalRelationAtP3) {
    auto U = osp_env(3);
    auto H = hypersurface(*U);
    EXPECT_EQ(H.t_degree, 3u);
    EXPECT_TRUE(H.none_below);
    EXPECT_TRUE(H.principal());
    EXPECT_GT(H.multiples, 1u);
    const Field& F = U->field();
    // the relation holds in U(g)
    std::vector<EnvElement> xs;
    for (auto& g : center_generators(*U)) xs.push_back(g.value);
    EXPECT_TRUE(evaluate_polynomial(*U, H.F, xs).is_zero());
    // vanishes at the point of Z_chi0(0); the origin is smooth
    const Elem quarter = F.inv(F.from_int(4));
    EXPECT_EQ(H.F.evaluate(F, {Elem{0}, Elem{0}, Elem{1}, quarter}).v, 0u);
    EXPECT_TRUE(is_smooth_point(H, F, {Elem{0}, Elem{0}, Elem{0}, Elem{0}}));
}

TEST(Hypersurface, P5) {
    auto H = hypersurface(*osp_env(5));
    EXPECT_EQ(H.t_degree, 5u);
    EXPECT_TRUE(H.none_below);
    EXPECT_TRUE(H.principal());
}

TEST(Locus, SmoothSetIdentity) {
    for (std::uint32_t p : {3u, 5u}) {
        auto U = osp_env(p);
        auto L = locus_report(U, hypersurface(*U));
        EXPECT_TRUE(L.identity_holds) << L.diff;
        EXPECT_TRUE(L.consistent_flags);
        EXPECT_EQ(L.rows.size(), (p + 1) / 2 + p + p);
        for (auto& r : L.rows) {
            EXPECT_TRUE(r.on_hypersurface);
            EXPECT_EQ(r.max_dim, r.dim == 2 * p);
            if (r.tag == OrbitTag::SemisimpleRegular) EXPECT_TRUE(r.smooth);
        }
        // L(lambda) and L(p-1-lambda) share a point, so the singular points number (p-1)/2
        EXPECT_EQ(L.singular_points.size(), (p - 1) / 2);
        EXPECT_EQ(L.claimed_singular_count, p - 1);
    }
    auto U = osp_env(3);
    auto L = locus_report(U, hypersurface(*U));
    const Elem quarter = U->field().inv(U->field().from_int(4));
    EXPECT_EQ(*L.singular_points.begin(), point_key({Elem{0}, Elem{0}, Elem{0}, quarter}));
}

TEST(Skew, SigmaRelations) {
    auto U = osp_env(3);
    SkewRing R(U);
    auto s = R.sigma();
    auto E = R.embed(U->gen("E")), e = R.embed(U->gen("e"));
    auto sEs = R.multiply(s, R.multiply(E, s));
    EXPECT_EQ(sEs.a, U->scale(-1, U->gen("E")));
    EXPECT_TRUE(sEs.b.is_zero());
    auto ses = R.multiply(s, R.multiply(e, s));
    EXPECT_EQ(ses.a, U->gen("e"));
    auto ss = R.multiply(s, s);
    EXPECT_EQ(ss.a, U->one());
    EXPECT_TRUE(ss.b.is_zero());
}

TEST(Skew, CenterSplits) {
    auto U = osp_env(3);
    for (unsigned d = 0; d <= 6; ++d) {
        auto v = skew_center_check(U, d);
        EXPECT_TRUE(v.ok()) << "d=" << d;
    }
    auto v = skew_center_check(U, 4);
    EXPECT_EQ(v.skew_dim, v.center_dim + v.anticenter_dim);
}

TEST(Skew, FunctorsAndEvenCategory) {
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        for (auto chi : {osp_chi0(*g), osp_chi1(*g), zero_character(*g)}) {
            auto v = even_category_check(g, chi);
            EXPECT_TRUE(v.ok()) << chi.name;
            if (chi.tag == OrbitTag::NilpotentRegular) {
                EXPECT_EQ(v.type_q, 1u);
                EXPECT_EQ(v.objects, p);
            }
        }
    }
    auto g = osp12(3);
    auto Z = baby_verma(g, osp_chi0(*g), Weight{Elem{0}});
    auto back = from_skew(to_skew(Z));
    EXPECT_TRUE(check_rep(back).ok());
    auto iso = iso_test(back, Z);  // same module, sigma-eigenbasis ordering
    EXPECT_TRUE(iso.isomorphic && iso.certified);
}
