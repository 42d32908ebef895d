#include <gtest/gtest.h>

#include <random>

#include "superkern/pbw.hpp"

using namespace superkern;

namespace {

struct Fixture {
    AlgebraPtr g;
    Envelope U;
    explicit Fixture(AlgebraPtr alg) : g(alg), U(alg) {}
};

EnvElement random_element(const Envelope& U, std::mt19937& rng, unsigned max_deg, std::size_t terms) {
    const auto& g = U.algebra();
    std::uniform_int_distribution<std::size_t> pick_gen(0, g.dim() - 1);
    std::uniform_int_distribution<unsigned> pick_len(0, max_deg);
    std::uniform_int_distribution<std::uint32_t> pick_c(1, g.p() - 1);
    EnvElement u = U.zero();
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<std::size_t> word(pick_len(rng));
        for (auto& w : word) w = pick_gen(rng);
        u = U.add(u, U.straighten(word, Elem{pick_c(rng)}));
    }
    return u;
}

EnvElement random_homogeneous(const Envelope& U, std::mt19937& rng, unsigned max_deg, unsigned parity) {
    for (;;) {
        auto [a, b] = U.parity_split(random_element(U, rng, max_deg, 3));
        const EnvElement& c = parity ? b : a;
        if (!c.is_zero()) return c;
    }
}

}  // namespace

TEST(Straighten, OddPairSwapsWithBracket) {
    Fixture fx(osp12(5));
    auto& U = fx.U;
    // F precedes E in the global order, so F*E is already normal
    EXPECT_EQ(U.format(U.straighten({"F", "E"})), "F*E");
    EXPECT_EQ(U.straighten({"E", "F"}), U.sub(U.gen("h"), U.straighten({"F", "E"})));
}

TEST(Straighten, OddSquareIsHalfBracket) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        Fixture fx(osp12(p));
        auto& U = fx.U;
        EXPECT_EQ(U.straighten({"E", "E"}), U.gen("e"));
        EXPECT_EQ(U.straighten({"F", "F"}), U.scale(-1, U.gen("f")));
    }
}

TEST(Straighten, OrderedWordIsFixed) {
    Fixture fx(osp12(3));
    auto& U = fx.U;
    auto u = U.straighten({"f", "h"});
    ASSERT_EQ(u.size(), 1u);
    EXPECT_EQ(U.format(u), "f*h");
    // h f = f h + [h, f] = f h - 2f, and -2 = 1 in F_3
    EXPECT_EQ(U.format(U.straighten({"h", "f"})), "f*h + f");
}

TEST(Multiply, UnitAndTwoOrders) {
    Fixture fx(osp12(5));
    auto& U = fx.U;
    auto ef = U.straighten({"E", "F"});
    EXPECT_EQ(U.multiply(ef, U.one()), ef);
    EXPECT_EQ(U.multiply(U.one(), ef), ef);
    EXPECT_EQ(U.multiply(ef, ef), U.straighten({"E", "F", "E", "F"}));
}

TEST(Multiply, XiProductAtThree) {
    Fixture fx(osp12(3));
    auto& U = fx.U;
    auto xh = U.xi("h"), xe = U.xi("e");
    EXPECT_EQ(U.format(xh), "h^3 - h");
    EXPECT_EQ(U.format(xe), "e^3");
    // central elements commute, so either order gives the same normal form
    auto prod = U.multiply(xh, xe);
    EXPECT_EQ(prod, U.multiply(xe, xh));
    Monomial h3e3, he3;
    h3e3.e[fx.g->index("h")] = 3;
    h3e3.e[fx.g->index("e")] = 3;
    he3.e[fx.g->index("h")] = 1;
    he3.e[fx.g->index("e")] = 3;
    EXPECT_EQ(prod.coeff(h3e3), Elem{1});
    EXPECT_EQ(prod.coeff(he3), Elem{2});
    EXPECT_EQ(prod.size(), 2u);
}

TEST(Associativity, RandomTriples) {
    for (auto [fam, m, n] : std::vector<std::tuple<std::string, int, int>>{{"osp", 1, 2}, {"gl", 1, 1}}) {
        for (std::uint32_t p : {3u, 5u}) {
            Fixture fx(make_builtin(fam, m, n, p));
            auto& U = fx.U;
            std::mt19937 rng(p * 101 + m);
            for (int t = 0; t < 200; ++t) {
                auto a = random_element(U, rng, 4, 2), b = random_element(U, rng, 4, 2), c = random_element(U, rng, 4, 2);
                ASSERT_EQ(U.multiply(U.multiply(a, b), c), U.multiply(a, U.multiply(b, c)))
                    << fam << " p=" << p << " a=" << U.format(a) << " b=" << U.format(b) << " c=" << U.format(c);
            }
        }
    }
}

TEST(Associativity, LargerAlgebras) {
    for (auto [fam, m, n] : std::vector<std::tuple<std::string, int, int>>{{"sl", 2, 1}, {"osp", 1, 4}}) {
        Fixture fx(make_builtin(fam, m, n, 3));
        auto& U = fx.U;
        std::mt19937 rng(5);
        for (int t = 0; t < 40; ++t) {
            auto a = random_element(U, rng, 3, 2), b = random_element(U, rng, 3, 2), c = random_element(U, rng, 3, 2);
            ASSERT_EQ(U.multiply(U.multiply(a, b), c), U.multiply(a, U.multiply(b, c)));
        }
    }
}

TEST(BracketLift, AllBasisPairs) {
    for (auto [fam, m, n] : std::vector<std::tuple<std::string, int, int>>{{"osp", 1, 2}, {"gl", 1, 1}, {"gl", 2, 1}}) {
        for (std::uint32_t p : {3u, 5u}) {
            Fixture fx(make_builtin(fam, m, n, p));
            auto& U = fx.U;
            const auto& g = *fx.g;
            for (std::size_t i = 0; i < g.dim(); ++i)
                for (std::size_t j = 0; j < g.dim(); ++j) {
                    auto xy = U.multiply(U.gen(i), U.gen(j));
                    auto yx = U.multiply(U.gen(j), U.gen(i));
                    auto lift = (g.is_odd(i) && g.is_odd(j)) ? U.add(xy, yx) : U.sub(xy, yx);
                    ASSERT_EQ(lift, U.from_vec(g.bracket(i, j))) << g.basis_name(i) << "," << g.basis_name(j);
                }
        }
    }
}

TEST(Filtration, TopSymbolIsSupercommutative) {
    Fixture fx(osp12(5));
    auto& U = fx.U;
    std::mt19937 rng(9);
    for (int t = 0; t < 50; ++t) {
        auto a = random_homogeneous(U, rng, 3, t % 2), b = random_homogeneous(U, rng, 3, (t / 2) % 2);
        auto ab = U.multiply(a, b), ba = U.multiply(b, a);
        EXPECT_LE(ab.degree(), a.degree() + b.degree());
        const int d = a.degree() + b.degree();
        // top symbols of ab and (-1)^{|a||b|} ba agree
        auto diff = (U.parity(a) & U.parity(b)) ? U.add(ab, ba) : U.sub(ab, ba);
        EXPECT_LT(diff.degree(), d);
    }
}

TEST(Adjoint, Derivation) {
    Fixture fx(osp12(3));
    auto& U = fx.U;
    const auto& g = *fx.g;
    std::mt19937 rng(21);
    for (int t = 0; t < 60; ++t) {
        const std::size_t x = t % g.dim();
        auto u = random_homogeneous(U, rng, 3, t % 2), v = random_homogeneous(U, rng, 3, (t / 3) % 2);
        auto lhs = U.ad(x, U.multiply(u, v));
        auto second = U.multiply(u, U.ad(x, v));
        if (g.is_odd(x) && U.parity(u) == 1) second = U.scale(-1, second);
        EXPECT_EQ(lhs, U.add(U.multiply(U.ad(x, u), v), second));
    }
    EXPECT_TRUE(U.ad(g.index("e"), U.one()).is_zero());
}

TEST(Adjoint, TwistedRejectsMixedParity) {
    Fixture fx(osp12(3));
    auto& U = fx.U;
    auto mixed = U.add(U.gen("h"), U.gen("E"));
    EXPECT_THROW(U.ad_twisted(fx.g->index("E"), mixed), std::invalid_argument);
    EXPECT_NO_THROW(U.ad_twisted(fx.g->index("h"), mixed));
}

TEST(Adjoint, SCommutesAndAnticommutes) {
    for (std::uint32_t p : {3u, 5u}) {
        Fixture fx(osp12(p));
        auto& U = fx.U;
        const auto& g = *fx.g;
        auto S = U.add(U.sub(U.straighten({"E", "F"}), U.straighten({"F", "E"})), U.scalar(U.field().inv(Elem{2})));
        EXPECT_TRUE(U.ad(g.index("h"), S).is_zero());
        EXPECT_TRUE(U.ad_twisted(g.index("E"), S).is_zero());
        EXPECT_TRUE(U.ad_twisted(g.index("F"), S).is_zero());
        EXPECT_FALSE(U.ad(g.index("E"), S).is_zero());
    }
}

TEST(PCenter, XiIsCentral) {
    for (std::uint32_t p : {3u, 5u}) {
        for (auto alg : {osp12(p), make_builtin("gl", 1, 1, p)}) {
            Envelope U(alg);
            for (auto i : alg->even_indices()) {
                auto x = U.xi(i);
                for (std::size_t j = 0; j < alg->dim(); ++j) EXPECT_TRUE(U.ad(j, x).is_zero()) << alg->name() << " xi_" << alg->basis_name(i);
            }
        }
    }
}

TEST(PCenter, Semilinearity) {
    for (std::uint32_t p : {3u, 5u}) {
        Envelope U(osp12(p));
        auto rep = U.semilinearity_check();
        EXPECT_TRUE(rep.ok);
        Envelope V(make_builtin("gl", 2, 1, p));
        EXPECT_TRUE(V.semilinearity_check().ok);
    }
}

TEST(Grading, SplitAndTruncate) {
    Fixture fx(osp12(5));
    auto& U = fx.U;
    auto [a, b] = U.parity_split(U.add(U.gen("h"), U.gen("E")));
    EXPECT_EQ(a, U.gen("h"));
    EXPECT_EQ(b, U.gen("E"));
    auto h = U.gen("h");
    EXPECT_EQ(U.parity_split(h).first, h);
    EXPECT_EQ(U.truncate(h, 5), h);
    auto S = U.add(U.sub(U.straighten({"E", "F"}), U.straighten({"F", "E"})), U.scalar(U.field().inv(Elem{2})));
    auto S2 = U.multiply(S, S);
    // F E F E = F h E + f e: odd squares drop a degree, so S^2 lives in degree 2
    EXPECT_EQ(S2.degree(), 2);
    EXPECT_EQ(U.truncate(S2, 2), S2);
    auto t = U.truncate(S2, 1);
    EXPECT_LE(t.degree(), 1);
    EnvElement high = U.sub(S2, t);
    for (auto& [m, c] : high.terms()) EXPECT_EQ(m.degree(), 2u);
}
