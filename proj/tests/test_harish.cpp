#include <gtest/gtest.h>

#include "superkern/harish.hpp"

using namespace superkern;

namespace superkern {
void PrintTo(const ToralPolynomial& f, std::ostream* os) { *os << f.format({"h"}); }
}  // namespace superkern

namespace {

struct Osp {
    AlgebraPtr g;
    EnvelopePtr U;
    explicit Osp(std::uint32_t p) : g(osp12(p)), U(std::make_shared<const Envelope>(g)) {}

    EnvElement S() const {
        const Field& K = U->field();
        return U->add(U->sub(U->multiply(U->gen("E"), U->gen("F")), U->multiply(U->gen("F"), U->gen("E"))),
                      U->scalar(K.inv(K.from_int(2))));
    }
    ToralPolynomial h() const { return ToralPolynomial::variable(g->field_ptr(), 1, 0); }
    ToralPolynomial c(long long v) const { return ToralPolynomial::constant(g->field_ptr(), 1, g->field().from_int(v)); }
    Elem half() const { return g->field().inv(g->field().from_int(2)); }
};

}  // namespace

TEST(Gamma1, Examples) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        Osp o(p);
        const auto& K = o.g->field();
        auto half = ToralPolynomial::constant(o.g->field_ptr(), 1, o.half());
        EXPECT_EQ(gamma1(*o.U, o.S()), o.h() + half);
        auto hp = ToralPolynomial::constant(o.g->field_ptr(), 1, K.one());
        for (unsigned k = 0; k < p; ++k) hp = hp * o.h();
        EXPECT_EQ(gamma1(*o.U, o.U->xi("h")), hp - o.h());
        // e f = f e + h projects to h
        EXPECT_EQ(gamma1(*o.U, o.U->multiply(o.U->gen("e"), o.U->gen("f"))), o.h());
        EXPECT_TRUE(gamma1(*o.U, o.U->multiply(o.U->gen("f"), o.U->gen("e"))).is_zero());
    }
}

TEST(Gamma1, FormatIsReadable) {
    Osp o(5);
    auto S2 = o.U->multiply(o.S(), o.S());
    EXPECT_EQ(gamma1(*o.U, S2).format({"h"}), "h^2 + h - 1");
    EXPECT_EQ(gamma(*o.U, S2).format({"h"}), "h^2");
}

TEST(Gamma1, MultiplicativeOnTorusInvariants) {
    // weight zero as an integer character of the torus, not merely mod p
    Osp o(3);
    std::vector<Monomial> mons;
    for (auto& m : o.U->monomials_up_to(4)) {
        long long wt = 0;
        for (std::size_t i = 0; i < o.g->dim(); ++i)
            if (o.g->block(i) != Block::Toral) wt += m.e[i] * o.g->weight(i)[0];
        if (wt == 0) mons.push_back(m);
    }
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    for (int t = 0; t < 100; ++t) {
        auto a = o.U->monomial(mons[pick(rng)], Elem{1});
        auto b = o.U->monomial(mons[pick(rng)], Elem{2});
        EXPECT_EQ(gamma1(*o.U, o.U->multiply(a, b)), gamma1(*o.U, a) * gamma1(*o.U, b));
    }
}

TEST(Gamma, ShiftSigns) {
    for (std::uint32_t p : {3u, 5u}) {
        Osp o(p);
        EXPECT_EQ(gamma(*o.U, o.S(), Shift::Plus), o.h() + o.c(1));
        EXPECT_EQ(gamma(*o.U, o.S(), Shift::Minus), o.h());
        EXPECT_EQ(gamma(*o.U, o.U->one(), Shift::Plus), o.c(1));
        EXPECT_EQ(gamma(*o.U, o.U->one(), Shift::Minus), o.c(1));
        auto S2 = o.U->multiply(o.S(), o.S());
        EXPECT_EQ(gamma(*o.U, S2, Shift::Minus), o.h() * o.h());
        EXPECT_EQ(gamma(*o.U, S2, Shift::Plus), (o.h() + o.c(1)) * (o.h() + o.c(1)));
    }
}

TEST(Weyl, Representative) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        Osp o(p);
        const auto& g = *o.g;
        const Field& F = g.field();
        auto w = weyl_representative(g);
        const auto h = g.index("h");
        Vec mh(g.dim());
        mh[h] = F.from_int(-1);
        EXPECT_EQ(w.automorphism.col(h), mh);
        // bracket and p-map preserved
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j)
                EXPECT_EQ(mat_vec(F, w.automorphism, g.bracket(i, j)), g.bracket(w.automorphism.col(i), w.automorphism.col(j)));
        // conjugation: xi_h -> -xi_h
        EXPECT_EQ(conjugate(*o.U, w, o.U->xi("h")), o.U->scale(-1, o.U->xi("h")));
        auto sh = weyl_shift(g, w);
        EXPECT_EQ(sh.from_roots, sh.from_rho);
        EXPECT_EQ(sh.from_roots, Vec{F.one()});
    }
}

TEST(Weyl, SSquaredIsFixed) {
    for (std::uint32_t p : {3u, 5u}) {
        Osp o(p);
        auto w = weyl_representative(*o.g);
        auto S = o.S();
        // n_s swaps E and F up to sign, and both S and S^2 are fixed
        EXPECT_EQ(conjugate(*o.U, w, S), S);
        auto S2 = o.U->multiply(S, S);
        EXPECT_EQ(conjugate(*o.U, w, S2), S2);
    }
}

TEST(Verify, InvariantPartSatisfiesAllIdentities) {
    for (std::uint32_t p : {3u, 5u}) {
        Osp o(p);
        auto slice = centralizer_slice(*o.U, 2 * p, false);
        for (auto chi : {zero_character(*o.g), osp_chi0(*o.g), osp_chi1(*o.g)}) {
            auto lam = lambda_set(*o.g, chi).weights;
            auto rep = verify_hc(o.U, slice, chi, lam);
            EXPECT_TRUE(rep.ok_invariant()) << chi.name << " p=" << p;
            EXPECT_TRUE(rep.shift_agrees);
            EXPECT_TRUE(rep.invariance);
            EXPECT_FALSE(rep.invariance_other_sign);
            EXPECT_GT(rep.invariant_dim, 1u);
            EXPECT_GT(rep.fixed_dim, rep.invariant_dim);
            if (chi.tag == OrbitTag::SemisimpleRegular) EXPECT_EQ(rep.reflected_mode, "isomorphism");
            if (chi.tag == OrbitTag::Zero) EXPECT_EQ(rep.reflected_mode, "homomorphism");
            if (chi.tag == OrbitTag::NilpotentRegular) EXPECT_EQ(rep.reflected_mode.rfind("skipped", 0), 0u);
        }
    }
}

TEST(Verify, WholeSliceHasKnownCounterexamples) {
    const std::uint32_t p = 3;
    Osp o(p);
    auto slice = centralizer_slice(*o.U, 2 * p, false);
    // xi_f is central with zero projection
    EXPECT_TRUE(gamma1(*o.U, o.U->xi("f")).is_zero());
    auto r0 = verify_hc(o.U, slice, zero_character(*o.g), lambda_set(*o.g, zero_character(*o.g)).weights);
    EXPECT_TRUE(r0.scalar_identity);
    EXPECT_FALSE(r0.injective);
    // on Z_chi0(lambda) it acts by chi0(f)^p = 1, not by gamma1(xi_f)(lambda) = 0
    auto chi0 = osp_chi0(*o.g);
    auto r1 = verify_hc(o.U, slice, chi0, lambda_set(*o.g, chi0).weights);
    EXPECT_FALSE(r1.scalar_identity);
    EXPECT_TRUE(r1.scalar_identity_invariant);
}
