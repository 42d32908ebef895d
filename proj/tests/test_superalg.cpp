#include <gtest/gtest.h>

#include "superkern/superalg.hpp"

using namespace superkern;

namespace {

Vec coords(const SuperAlgebra& g, std::initializer_list<std::pair<long long, const char*>> terms) {
    Vec v(g.dim());
    for (auto& [c, n] : terms) v[g.index(n)] = g.field().add(v[g.index(n)], g.field().from_int(c));
    return v;
}

}  // namespace

TEST(Osp12, BasisAndBrackets) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        auto g = builtin("osp", 1, 2, p);
        EXPECT_EQ(g.even_dim(), 3u);
        EXPECT_EQ(g.odd_dim(), 2u);
        const auto E = g.index("E"), F = g.index("F");
        EXPECT_EQ(g.bracket(E, F), coords(g, {{1, "h"}}));
        EXPECT_EQ(g.bracket(E, E), coords(g, {{2, "e"}}));
        EXPECT_EQ(g.bracket(F, F), coords(g, {{-2, "f"}}));
        EXPECT_EQ(g.bracket(g.index("h"), E), coords(g, {{1, "E"}}));
        EXPECT_EQ(g.bracket(g.index("e"), g.index("f")), coords(g, {{1, "h"}}));
        EXPECT_EQ(g.p_map(g.index("h")), coords(g, {{1, "h"}}));
        EXPECT_TRUE(is_zero_vec(g.p_map(g.index("e"))));
    }
}

TEST(Osp12, GlobalOrder) {
    auto g = builtin("osp", 1, 2, 5);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < g.dim(); ++i) names.push_back(g.basis_name(i));
    EXPECT_EQ(names, (std::vector<std::string>{"f", "F", "h", "E", "e"}));
}

TEST(Gl11, OddBracket) {
    auto g = builtin("gl", 1, 1, 3);
    EXPECT_EQ(g.even_dim(), 2u);
    EXPECT_EQ(g.odd_dim(), 2u);
    EXPECT_EQ(g.bracket(g.index("E12"), g.index("E21")), coords(g, {{1, "E11"}, {1, "E22"}}));
    EXPECT_TRUE(is_zero_vec(g.bracket(g.index("E12"), g.index("E12"))));
}

TEST(Builtin, CharacteristicRestriction) {
    try {
        builtin("sl", 2, 2, 3);
        FAIL() << "sl(2|2) at p=3 accepted";
    } catch (const SpecError& e) {
        EXPECT_NE(std::string(e.what()).find("p not dividing m-n"), std::string::npos);
    }
    EXPECT_THROW(builtin("sl", 1, 4, 3), SpecError);
    EXPECT_NO_THROW(builtin("sl", 2, 1, 3));
    EXPECT_THROW(builtin("F4", 0, 0, 17), SpecError);
    EXPECT_THROW(builtin("osp", 1, 2, 2), SpecError);
}

TEST(Validate, BuiltinsPass) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        std::vector<SuperAlgebra> algs;
        algs.push_back(builtin("osp", 1, 2, p));
        algs.push_back(builtin("osp", 1, 4, p));
        algs.push_back(builtin("gl", 1, 1, p));
        algs.push_back(builtin("gl", 2, 1, p));
        algs.push_back(builtin("sl", 2, 1, p));
        algs.push_back(builtin("gl", 2, 0, p));
        for (auto& g : algs) {
            auto rep = validate(g);
            for (auto& c : rep.checks) EXPECT_TRUE(c.passed) << g.name() << " p=" << p << " " << c.name << " " << c.witness;
            if (g.form()) {
                auto cr = check_coroots(g);
                EXPECT_TRUE(cr.passed) << g.name() << " " << cr.witness;
            }
        }
    }
}

TEST(Validate, PerturbedBracketGivesJacobiWitness) {
    auto g = builtin("osp", 1, 2, 5);
    auto d = g.to_data();
    // data order: evens then odds in global order -> f, h, e, F, E
    auto idx = [&](const std::string& n) {
        for (std::size_t i = 0; i < d.even_names.size(); ++i)
            if (d.even_names[i] == n) return i;
        for (std::size_t i = 0; i < d.odd_names.size(); ++i)
            if (d.odd_names[i] == n) return d.even_names.size() + i;
        return std::size_t(-1);
    };
    const auto E = idx("E"), F = idx("F"), e = idx("e");
    d.brackets[E][F][e] = Elem{1};
    d.brackets[F][E][e] = Elem{1};
    SuperAlgebra bad(d);
    auto rep = validate(bad);
    const auto* j = rep.find("super_jacobi");
    ASSERT_NE(j, nullptr);
    EXPECT_FALSE(j->passed);
    EXPECT_FALSE(j->witness.empty());
    // The perturbation h -> h + e is invisible to ad e (as [e,e] = 0), so the
    // triple (e, E, F) still satisfies Jacobi; (f, E, F) is where it breaks.
    auto jacobi_defect = [&](const char* a, const char* b, const char* c) {
        const Field& K = bad.field();
        const auto x = bad.index(a), y = bad.index(b), z = bad.index(c);
        Vec lhs = bad.bracket(bad.unit(x), bad.bracket(y, z));
        Vec r1 = bad.bracket(bad.bracket(x, y), bad.unit(z));
        Vec r2 = bad.bracket(bad.unit(y), bad.bracket(x, z));
        for (std::size_t i = 0; i < lhs.size(); ++i)
            if (lhs[i] != K.add(r1[i], r2[i])) return true;
        return false;
    };
    EXPECT_FALSE(jacobi_defect("e", "E", "F"));
    EXPECT_TRUE(jacobi_defect("f", "E", "F"));
}

TEST(Validate, ZeroPMapBreaksRestrictedness) {
    auto g = builtin("osp", 1, 2, 3);
    auto d = g.to_data();
    for (std::size_t i = 0; i < d.even_names.size(); ++i)
        if (d.even_names[i] == "h") d.p_map[i] = Vec(g.dim());
    auto rep = validate(SuperAlgebra(d));
    EXPECT_FALSE(rep.find("restrictedness")->passed);
    EXPECT_NE(rep.find("restrictedness")->witness.find("h"), std::string::npos);
}

TEST(Validate, SpecRejectsCharacteristicTwo) {
    SuperAlgebraData d;
    d.p = 2;
    EXPECT_THROW(SuperAlgebra{d}, SpecError);
}

TEST(Realization, ClosureFailureNamesPair) {
    MatrixRealization r;
    r.name = "broken";
    r.p = 5;
    r.index_parity = {0, 0};
    r.even.push_back({"a", detail::unit_matrix(2, 0, 1)});
    r.even.push_back({"b", detail::unit_matrix(2, 1, 0)});
    try {
        from_matrix_realization(r);
        FAIL();
    } catch (const SpecError& e) {
        EXPECT_NE(std::string(e.what()).find("[a, b]"), std::string::npos);
    }
}

TEST(Rho, Osp12) {
    auto g = builtin("osp", 1, 2, 5);
    Vec rho = rho_weight(g);
    ASSERT_EQ(rho.size(), 1u);
    EXPECT_EQ(rho[0], g.field().inv(Elem{2}));
}

TEST(Rho, Gl11) {
    auto g = builtin("gl", 1, 1, 5);
    Vec rho = rho_weight(g);
    const Field& F = g.field();
    // -1/2 (delta - eps) on (E11, E22)
    EXPECT_EQ(rho, (Vec{F.neg(F.inv(Elem{2})), F.inv(Elem{2})}));
}

TEST(Rho, PurelyEven) {
    auto g = builtin("gl", 2, 0, 3);
    const Field& F = g.field();
    EXPECT_EQ(rho_weight(g), (Vec{F.inv(Elem{2}), F.neg(F.inv(Elem{2}))}));
}

TEST(RootData, CorootPairing) {
    auto g = builtin("osp", 1, 2, 5);
    Vec h = coroot(g, {1});
    // (h_alpha, h) = alpha(h) = 1
    const auto hi = g.index("h");
    // supertrace form on the realization: str(h^2) = -2
    EXPECT_EQ((*g.form())(hi, hi), g.field().from_int(-2));
    EXPECT_EQ(g.field().mul(h[hi], (*g.form())(hi, hi)), g.field().one());
}

TEST(Opposite, SwapsBlocks) {
    auto g = builtin("osp", 1, 2, 5);
    std::vector<std::size_t> perm;
    auto op = g.opposite(&perm);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < op.dim(); ++i) {
        names.push_back(op.basis_name(i));
        EXPECT_EQ(g.basis_name(perm[i]), op.basis_name(i));
    }
    EXPECT_EQ(names, (std::vector<std::string>{"e", "E", "h", "F", "f"}));
    EXPECT_TRUE(validate(op).ok());
}
