#include <gtest/gtest.h>

#include <random>

#include "superkern/central.hpp"
#include "superkern/reduced.hpp"

using namespace superkern;

namespace {

Monomial power_of(const SuperAlgebra& g, const char* name, unsigned k) {
    Monomial m;
    m.e[g.index(name)] = static_cast<std::uint8_t>(k);
    return m;
}

Vec unit_vec(std::size_t n, std::size_t i, const Field& K) {
    Vec v(n);
    v[i] = K.one();
    return v;
}

}  // namespace

TEST(Character, Tags) {
    auto g = osp12(3);
    EXPECT_EQ(osp_chi0(*g).tag, OrbitTag::NilpotentRegular);
    EXPECT_EQ(osp_chi1(*g).tag, OrbitTag::SemisimpleRegular);
    EXPECT_EQ(zero_character(*g).tag, OrbitTag::Zero);
    auto gl = make_builtin("gl", 1, 1, 3);
    EXPECT_EQ(make_character(*gl, gl->field_ptr(), {{"E11", Elem{1}}}).tag, OrbitTag::Other);
    EXPECT_THROW(make_character(*g, g->field_ptr(), {{"E", Elem{1}}}), std::invalid_argument);
}

TEST(Character, Chi1HasTraceZeroPower) {
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        auto chi = osp_chi1(*g);
        const Field& K = *chi.field;
        Elem c = chi.pth(g->index("h"));
        EXPECT_NE(c.v, 0u);
        EXPECT_EQ(K.add(c, K.frobenius(c)).v, 0u);
    }
}

TEST(Reduce, Examples) {
    auto g = osp12(3);
    auto U = std::make_shared<const Envelope>(g);
    ReducedAlgebra A0(U, osp_chi0(*g)), Z(U, zero_character(*g));
    EXPECT_TRUE(is_zero_vec(A0.reduce(U->monomial(power_of(*g, "e", 3), Elem{1}))));
    Vec f3 = A0.reduce(U->monomial(power_of(*g, "f", 3), Elem{1}));
    EXPECT_EQ(f3, unit_vec(A0.dim(), A0.index(Monomial{}), A0.field()));
    Vec h3 = Z.reduce(U->monomial(power_of(*g, "h", 3), Elem{1}));
    EXPECT_EQ(h3, unit_vec(Z.dim(), Z.index(power_of(*g, "h", 1)), Z.field()));
}

TEST(Reduced, Dimensions) {
    for (std::uint32_t p : {3u, 5u}) {
        auto g = osp12(p);
        auto U = std::make_shared<const Envelope>(g);
        for (auto chi : {zero_character(*g), osp_chi0(*g), osp_chi1(*g)}) {
            ReducedAlgebra A(U, chi);
            EXPECT_EQ(A.dim(), 4u * p * p * p);
            EXPECT_EQ(A.dim(), A.formula_dim());
        }
        auto gl = make_builtin("gl", 1, 1, p);
        ReducedAlgebra B(std::make_shared<const Envelope>(gl), zero_character(*gl));
        EXPECT_EQ(B.dim(), 4u * p * p);
    }
}

TEST(Reduced, ReduceIsAlgebraMap) {
    auto g = osp12(3);
    auto U = std::make_shared<const Envelope>(g);
    ReducedAlgebra A(U, osp_chi1(*g));
    std::mt19937 rng(4);
    std::uniform_int_distribution<std::size_t> gen(0, g->dim() - 1);
    std::uniform_int_distribution<unsigned> len(0, 5);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::size_t> w1(len(rng)), w2(len(rng));
        for (auto& x : w1) x = gen(rng);
        for (auto& x : w2) x = gen(rng);
        auto u = U->straighten(w1, Elem{1}), v = U->straighten(w2, Elem{2});
        ASSERT_EQ(A.reduce(U->multiply(u, v)), A.multiply(A.reduce(u), A.reduce(v)));
    }
}

TEST(Reduced, CentralImagesAreCentral) {
    auto g = osp12(3);
    auto U = std::make_shared<const Envelope>(g);
    ReducedAlgebra A(U, osp_chi0(*g));
    auto z = centralizer_slice(*U, 4, false);
    for (auto& u : z.elements) {
        Vec r = A.reduce(u);
        for (std::size_t i = 0; i < g->dim(); ++i) {
            Vec x = A.reduce(U->gen(i));
            ASSERT_EQ(A.multiply(r, x), A.multiply(x, r));
        }
    }
    // xi_i reduces to the scalar chi(x_i)^p
    for (auto i : g->even_indices()) {
        Vec r = A.reduce(U->xi(i));
        Vec expect(A.dim());
        expect[A.index(Monomial{})] = A.character().pth(i);
        EXPECT_EQ(r, expect);
    }
}

TEST(Reduced, RegularRepresentationRelations) {
    auto g = osp12(3);
    auto U = std::make_shared<const Envelope>(g);
    ReducedAlgebra A(U, osp_chi1(*g));
    const Field& K = A.field();
    std::vector<Matrix> M;
    for (std::size_t i = 0; i < g->dim(); ++i) M.push_back(A.regular_matrix(i));
    auto embed = [&](const Vec& v) {
        Matrix out(A.dim(), A.dim());
        for (std::size_t k = 0; k < g->dim(); ++k) mat_axpy(K, out, Elem{v[k].v}, M[k]);
        return out;
    };
    for (std::size_t i = 0; i < g->dim(); ++i)
        for (std::size_t j = 0; j < g->dim(); ++j) {
            Matrix xy = mat_mul(K, M[i], M[j]), yx = mat_mul(K, M[j], M[i]);
            Matrix lhs = (g->is_odd(i) && g->is_odd(j)) ? mat_add(K, xy, yx) : mat_sub(K, xy, yx);
            ASSERT_EQ(lhs, embed(g->bracket(i, j)));
        }
    for (auto i : g->even_indices()) {
        Matrix rhs = embed(g->p_map(i));
        mat_axpy(K, rhs, A.character().pth(i), Matrix::identity(K, A.dim()));
        EXPECT_EQ(mat_pow(K, M[i], g->p()), rhs);
    }
}
