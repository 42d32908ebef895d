#pragma once

// Finite-dimensional graded representations: baby Verma modules, MeatAxe
// irreducibility, intertwiners, type M/Q, parity flip, heads and twists.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "superkern/reduced.hpp"

namespace superkern {

using Weight = Vec;  // values on the toral basis

/// Z/2-graded representation given by one action matrix per basis element.
struct MatrixRep {
    std::string name;
    AlgebraPtr algebra;
    FieldPtr field;
    std::vector<unsigned> parity;   // per basis vector
    std::vector<Matrix> action;     // per basis element of g (global order)
    PCharacter chi;
    std::optional<std::size_t> cyclic;  // index of a generating vector, if known

    std::size_t dim() const { return parity.size(); }
    const Field& F() const { return *field; }
    const Matrix& operator[](std::size_t i) const { return action.at(i); }
};

struct RepCheck {
    bool brackets = true, parity = true, reduced = true;
    std::string witness;
    bool ok() const { return brackets && parity && reduced; }
};

namespace detail {

inline Matrix embed_vec_action(const MatrixRep& V, const Vec& x) {
    Matrix out(V.dim(), V.dim());
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k].v) mat_axpy(V.F(), out, Elem{x[k].v}, V.action[k]);
    return out;
}

inline Matrix parity_operator(const MatrixRep& V) {
    Matrix s(V.dim(), V.dim());
    for (std::size_t i = 0; i < V.dim(); ++i) s(i, i) = V.parity[i] ? V.F().from_int(-1) : V.F().one();
    return s;
}

}  // namespace detail

/// The three defining properties of a chi-reduced supermodule.
inline RepCheck check_rep(const MatrixRep& V) {
    RepCheck rc;
    const auto& g = *V.algebra;
    const Field& K = V.F();
    for (std::size_t i = 0; i < g.dim() && rc.brackets; ++i)
        for (std::size_t j = 0; j < g.dim() && rc.brackets; ++j) {
            Matrix xy = mat_mul(K, V[i], V[j]), yx = mat_mul(K, V[j], V[i]);
            Matrix lhs = (g.is_odd(i) && g.is_odd(j)) ? mat_add(K, xy, yx) : mat_sub(K, xy, yx);
            if (!(lhs == detail::embed_vec_action(V, g.bracket(i, j)))) {
                rc.brackets = false;
                rc.witness = "bracket (" + g.basis_name(i) + ", " + g.basis_name(j) + ")";
            }
        }
    for (std::size_t i = 0; i < g.dim() && rc.parity; ++i)
        for (std::size_t r = 0; r < V.dim(); ++r)
            for (std::size_t c = 0; c < V.dim(); ++c)
                if (V[i](r, c).v && ((V.parity[r] + V.parity[c]) & 1u) != g.parity(i)) {
                    rc.parity = false;
                    rc.witness = "parity of " + g.basis_name(i);
                }
    for (auto i : g.even_indices()) {
        Matrix lhs = mat_pow(K, V[i], g.p());
        Matrix rhs = detail::embed_vec_action(V, g.p_map(i));
        mat_axpy(K, rhs, V.chi.pth(i), Matrix::identity(K, V.dim()));
        if (!(lhs == rhs)) {
            rc.reduced = false;
            rc.witness = "x^p - x^[p] != chi(x)^p for " + g.basis_name(i);
            break;
        }
    }
    return rc;
}

// ---------------------------------------------------------------------------
// Lambda(chi)

struct LambdaSet {
    std::vector<Weight> weights;
    std::string hint;  // set when empty
};

/// All lambda with lambda(h)^p - lambda(h^[p]) = chi(h)^p on the toral basis.
inline LambdaSet lambda_set(const SuperAlgebra& g, const PCharacter& chi) {
    const Field& K = *chi.field;
    const auto& T = g.toral_indices();
    const std::size_t r = T.size();
    LambdaSet out;
    // per-coordinate Artin-Schreier when every h^[p] = h
    bool diagonal = true;
    for (auto t : T)
        if (g.p_map(t) != g.unit(t)) diagonal = false;
    if (diagonal) {
        std::vector<std::vector<Elem>> per;
        for (auto t : T) per.push_back(artin_schreier_solve(K, chi.pth(t)));
        for (auto& s : per)
            if (s.empty()) {
                out.hint = "Lambda(chi) is empty over " + K.describe() + "; extend the field (lambda^p - lambda = c has roots in an extension of degree p, or degree 2 when c has trace zero over F_p)";
                return out;
            }
        std::vector<std::size_t> idx(r, 0);
        for (;;) {
            Weight w(r);
            for (std::size_t k = 0; k < r; ++k) w[k] = per[k][idx[k]];
            out.weights.push_back(w);
            std::size_t k = r;
            while (k > 0) {
                --k;
                if (++idx[k] < per[k].size()) break;
                idx[k] = 0;
                if (k == 0) return out;
            }
            if (r == 0) return out;
        }
    }
    if (r > 2) throw std::invalid_argument("brute-force Lambda(chi) is limited to toral rank <= 2");
    // brute force over K^r
    const std::uint64_t total = r == 1 ? K.order() : std::uint64_t(K.order()) * K.order();
    for (std::uint64_t n = 0; n < total; ++n) {
        Weight w(r);
        std::uint64_t x = n;
        for (std::size_t k = 0; k < r; ++k) {
            w[k] = Elem{static_cast<std::uint32_t>(x % K.order())};
            x /= K.order();
        }
        bool ok = true;
        for (std::size_t a = 0; a < r && ok; ++a) {
            Elem lp = K.zero();
            for (std::size_t b = 0; b < r; ++b) lp = K.add(lp, K.mul(Elem{g.p_map(T[a])[T[b]].v}, w[b]));
            ok = K.sub(K.frobenius(w[a]), lp) == chi.pth(T[a]);
        }
        if (ok) out.weights.push_back(w);
    }
    if (out.weights.empty()) out.hint = "Lambda(chi) is empty over " + K.describe() + "; extend the field";
    return out;
}

inline bool in_lambda(const SuperAlgebra& g, const PCharacter& chi, const Weight& w) {
    const Field& K = *chi.field;
    const auto& T = g.toral_indices();
    if (w.size() != T.size()) return false;
    for (std::size_t a = 0; a < T.size(); ++a) {
        Elem lp = K.zero();
        for (std::size_t b = 0; b < T.size(); ++b) lp = K.add(lp, K.mul(Elem{g.p_map(T[a])[T[b]].v}, w[b]));
        if (K.sub(K.frobenius(w[a]), lp) != chi.pth(T[a])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Baby Verma modules

enum class Borel { Standard, Reflected };

namespace detail {

/// Z_chi(lambda) for the triangular data of g itself.
inline MatrixRep baby_verma_for(const AlgebraPtr& g, const PCharacter& chi, const Weight& lambda, const std::string& name) {
    if (!g->has_triangular()) throw SpecError("baby Verma modules need triangular data");
    const Field& K = *chi.field;
    for (std::size_t i = 0; i < g->dim(); ++i) {
        const Block b = g->block(i);
        if ((b == Block::PosEven) && chi(i).v)
            throw std::invalid_argument("chi must vanish on the positive nilradical of the chosen Borel (fails on " + g->basis_name(i) + ")");
    }
    if (!in_lambda(*g, chi, lambda)) throw std::invalid_argument("lambda is not in Lambda(chi)");
    auto U = std::make_shared<const Envelope>(g);
    ReducedAlgebra A(U, chi);

    // basis: reduced monomials supported on the negative blocks
    std::vector<std::size_t> basis_idx;
    std::map<std::size_t, std::size_t> pos;  // reduced index -> module index
    for (std::size_t k = 0; k < A.dim(); ++k) {
        const Monomial& m = A.basis()[k];
        bool neg = true;
        for (std::size_t i = 0; i < g->dim(); ++i)
            if (m.e[i] && g->block(i) != Block::NegEven && g->block(i) != Block::NegOdd) neg = false;
        if (neg) {
            pos.emplace(k, basis_idx.size());
            basis_idx.push_back(k);
        }
    }
    const std::size_t n = basis_idx.size();
    const auto& T = g->toral_indices();
    auto toral_slot = [&](std::size_t i) {
        for (std::size_t a = 0; a < T.size(); ++a)
            if (T[a] == i) return a;
        return T.size();
    };
    // value on v of a reduced monomial neg * toral * pos (global order)
    auto apply_to_v = [&](const Monomial& m, Elem c, Vec& out) {
        Monomial neg;
        Elem s = c;
        for (std::size_t i = 0; i < g->dim(); ++i) {
            if (!m.e[i]) continue;
            switch (g->block(i)) {
                case Block::NegEven:
                case Block::NegOdd: neg.e[i] = m.e[i]; break;
                case Block::Toral: s = K.mul(s, K.pow(lambda[toral_slot(i)], m.e[i])); break;
                default: return;  // positive factor kills v
            }
        }
        if (s.v == 0) return;
        const std::size_t j = pos.at(A.index(neg));
        out[j] = K.add(out[j], s);
    };

    MatrixRep V;
    V.name = name;
    V.algebra = g;
    V.field = chi.field;
    V.chi = chi;
    V.cyclic = 0;
    for (auto k : basis_idx) V.parity.push_back(U->parity(A.basis()[k]));
    for (std::size_t i = 0; i < g->dim(); ++i) {
        Matrix M(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            const EnvElement prod = U->left_gen(i, U->monomial(A.basis()[basis_idx[col]], U->field().one()));
            Vec out(n);
            for (auto& [k, c] : A.reduce_sparse(prod)) apply_to_v(A.basis()[k], c, out);
            for (std::size_t r = 0; r < n; ++r) M(r, col) = out[r];
        }
        V.action.push_back(std::move(M));
    }
    return V;
}

}  // namespace detail

inline std::string weight_label(const Field& K, const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + K.format(w[i]);
    return s;
}

/// Z_chi(lambda) = U_chi(g) (x)_{U_chi(b)} k_lambda; basis: reduced monomials of
/// U_chi(n^-) applied to v, with v first.
inline MatrixRep baby_verma(const AlgebraPtr& g, const PCharacter& chi, const Weight& lambda, Borel borel = Borel::Standard) {
    const std::string base = "Z_" + (chi.name.empty() ? std::string("chi") : chi.name) + "(" + weight_label(*chi.field, lambda) + ")";
    if (borel == Borel::Standard) return detail::baby_verma_for(g, chi, lambda, base);
    std::vector<std::size_t> perm;
    auto op = std::make_shared<const SuperAlgebra>(g->opposite(&perm));
    PCharacter chi_op = chi;
    for (std::size_t j = 0; j < op->dim(); ++j) chi_op.values[j] = chi.values[perm[j]];
    for (std::size_t i = 0; i < op->dim(); ++i)
        if (op->block(i) == Block::PosEven && chi_op(i).v)
            throw std::invalid_argument("chi must vanish on the positive nilradical of the reflected Borel (fails on " + op->basis_name(i) + ")");
    MatrixRep W = detail::baby_verma_for(op, chi_op, lambda, base + "^refl");
    MatrixRep V = W;
    V.algebra = g;
    V.chi = chi;
    V.action.assign(g->dim(), Matrix());
    for (std::size_t j = 0; j < op->dim(); ++j) V.action[perm[j]] = W.action[j];
    return V;
}

// ---------------------------------------------------------------------------
// Evaluation and central characters

inline Matrix evaluate(const Envelope& U, const EnvElement& u, const MatrixRep& V) {
    const Field& K = V.F();
    Matrix out(V.dim(), V.dim());
    std::map<std::pair<std::size_t, unsigned>, Matrix> powers;
    auto pw = [&](std::size_t i, unsigned a) -> const Matrix& {
        auto key = std::make_pair(i, a);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, mat_pow(K, V[i], a)).first;
        return it->second;
    };
    for (auto& [m, c] : u.terms()) {
        Matrix t = Matrix::identity(K, V.dim());
        for (std::size_t i = 0; i < U.dim(); ++i)
            if (m.e[i]) t = mat_mul(K, t, pw(i, m.e[i]));
        mat_axpy(K, out, Elem{c.v}, t);
    }
    return out;
}

class NotScalarError : public std::runtime_error {
public:
    NotScalarError(const std::string& what, Matrix m) : std::runtime_error(what), matrix(std::move(m)) {}
    Matrix matrix;
};

inline Elem central_scalar(const Envelope& U, const EnvElement& z, const MatrixRep& V) {
    Matrix m = evaluate(U, z, V);
    const Elem c = V.dim() ? m(0, 0) : V.F().zero();
    if (!(m == Matrix::scalar(V.F(), V.dim(), c)))
        throw NotScalarError("element does not act by a scalar on " + V.name, m);
    return c;
}

inline std::vector<Elem> central_character_point(const Envelope& U, const MatrixRep& V, const std::vector<EnvElement>& gens) {
    std::vector<Elem> pt;
    for (auto& z : gens) pt.push_back(central_scalar(U, z, V));
    return pt;
}

// ---------------------------------------------------------------------------
// Submodules, MeatAxe

namespace detail {

/// Echelon basis of the smallest subspace containing `seeds` and stable under `gens`.
inline std::vector<Vec> spin(const Field& K, const std::vector<Matrix>& gens, const std::vector<Vec>& seeds, std::size_t n) {
    std::vector<Vec> basis;
    std::vector<std::size_t> pivots;
    auto reduce = [&](Vec v) {
        for (std::size_t r = 0; r < basis.size(); ++r) {
            Elem f = v[pivots[r]];
            if (f.v == 0) continue;
            Elem nf = K.neg(f);
            for (std::size_t j = 0; j < n; ++j)
                if (basis[r][j].v) v[j] = K.add(v[j], K.mul(nf, basis[r][j]));
        }
        return v;
    };
    std::vector<Vec> queue;
    auto push = [&](const Vec& v0) {
        Vec v = reduce(v0);
        std::size_t piv = 0;
        while (piv < n && v[piv].v == 0) ++piv;
        if (piv == n) return;
        Elem inv = K.inv(v[piv]);
        for (auto& x : v) x = K.mul(x, inv);
        basis.push_back(v);
        pivots.push_back(piv);
        queue.push_back(v);
    };
    for (auto& s : seeds) push(s);
    while (!queue.empty() && basis.size() < n) {
        Vec v = queue.back();
        queue.pop_back();
        for (auto& A : gens) push(mat_vec(K, A, v));
    }
    return basis;
}

}  // namespace detail

struct Irreducibility {
    bool irreducible = true;
    std::vector<Vec> submodule;  // proper nonzero graded submodule when reducible
};

/// Norton's irreducibility test on graded submodules (the parity operator is
/// added to the generators).  Deterministic: the random stream is seeded.
inline Irreducibility is_irreducible(const MatrixRep& V, unsigned seed = 1) {
    const std::size_t n = V.dim();
    const Field& K = V.F();
    Irreducibility res;
    if (n <= 1) return res;
    std::vector<Matrix> gens;
    for (auto& m : V.action)
        if (!m.is_zero()) gens.push_back(m);
    gens.push_back(detail::parity_operator(V));
    std::vector<Matrix> gens_t;
    for (auto& m : gens) gens_t.push_back(m.transpose());

    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<std::uint32_t> coef(0, K.order() - 1);
    Matrix word = Matrix::identity(K, n);
    const std::size_t max_lines = 4096;
    for (int attempt = 0; attempt < 400; ++attempt) {
        // random element of the action algebra
        word = mat_mul(K, word, gens[pick(rng)]);
        if (attempt % 7 == 6) word = Matrix::identity(K, n);
        Matrix theta = mat_scale(K, Elem{coef(rng)}, word);
        for (int k = 0; k < 3; ++k) mat_axpy(K, theta, Elem{coef(rng)}, gens[pick(rng)]);
        mat_axpy(K, theta, Elem{coef(rng)}, mat_mul(K, gens[pick(rng)], gens[pick(rng)]));
        // shift by an eigenvalue in K, if any
        std::optional<Elem> mu;
        for (std::uint32_t v = 0; v < K.order() && !mu; ++v) {
            Matrix s = theta;
            for (std::size_t i = 0; i < n; ++i) s(i, i) = K.sub(s(i, i), Elem{v});
            if (determinant(K, s).v == 0) mu = Elem{v};
        }
        if (!mu) continue;
        for (std::size_t i = 0; i < n; ++i) theta(i, i) = K.sub(theta(i, i), *mu);
        auto ker = kernel_basis(K, theta);
        if (ker.size() == n) continue;
        double lines = 1;
        for (std::size_t k = 1; k < ker.size(); ++k) lines *= K.order();
        if (lines > double(max_lines)) continue;

        auto s = detail::spin(K, gens, {ker[0]}, n);
        if (s.size() < n) {
            res.irreducible = false;
            res.submodule = s;
            return res;
        }
        auto kt = kernel_basis(K, theta.transpose());
        auto st = detail::spin(K, gens_t, {kt[0]}, n);
        if (st.size() < n) {
            res.irreducible = false;
            res.submodule = kernel_basis(K, Matrix::from_rows(st, n));
            return res;
        }
        // every nonzero vector of ker(theta) must generate (one per line)
        const std::size_t k = ker.size();
        std::vector<std::uint32_t> c(k, 0);
        for (;;) {
            std::size_t i = 0;
            while (i < k && ++c[i] == K.order()) c[i++] = 0;
            if (i == k) break;
            // canonical line representative: last nonzero coordinate is one
            std::size_t last = k;
            for (std::size_t j = k; j-- > 0;)
                if (c[j]) {
                    last = j;
                    break;
                }
            if (last == k || c[last] != 1) continue;
            Vec v(n);
            for (std::size_t j = 0; j < k; ++j)
                if (c[j])
                    for (std::size_t t = 0; t < n; ++t) v[t] = K.add(v[t], K.mul(Elem{c[j]}, ker[j][t]));
            auto sv = detail::spin(K, gens, {v}, n);
            if (sv.size() < n) {
                res.irreducible = false;
                res.submodule = sv;
                return res;
            }
        }
        return res;
    }
    throw std::runtime_error("irreducibility test inconclusive for " + V.name);
}

/// Submodule spanned by `basis` (must be stable); the restricted representation.
inline MatrixRep submodule_rep(const MatrixRep& V, const std::vector<Vec>& basis) {
    const Field& K = V.F();
    const std::size_t n = V.dim();
    // re-express a graded basis: project the echelon rows onto parity components
    std::vector<Vec> homog;
    for (auto& b : basis)
        for (unsigned par : {0u, 1u}) {
            Vec v(n);
            for (std::size_t i = 0; i < n; ++i)
                if (V.parity[i] == par) v[i] = b[i];
            homog.push_back(v);
        }
    auto B = span_basis(K, homog, n);
    Matrix P = Matrix::from_columns(B, n);
    MatrixRep W;
    W.name = V.name + "_sub";
    W.algebra = V.algebra;
    W.field = V.field;
    W.chi = V.chi;
    for (auto& b : B) {
        unsigned par = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (b[i].v) par = V.parity[i];
        W.parity.push_back(par);
    }
    for (auto& A : V.action) {
        Matrix M(B.size(), B.size());
        for (std::size_t c = 0; c < B.size(); ++c) {
            auto coords = solve(K, P, mat_vec(K, A, B[c]));
            if (!coords) throw std::invalid_argument("subspace is not a submodule");
            for (std::size_t r = 0; r < B.size(); ++r) M(r, c) = (*coords)[r];
        }
        W.action.push_back(std::move(M));
    }
    return W;
}

struct Quotient {
    MatrixRep rep;
    std::vector<std::size_t> kept;  // coordinates of V surviving in V/W
    std::vector<Vec> sub;           // echelon basis of W
};

/// V / W for a graded submodule W.
inline Quotient quotient_rep(const MatrixRep& V, const std::vector<Vec>& sub) {
    const Field& K = V.F();
    const std::size_t n = V.dim();
    Matrix S = Matrix::from_rows(sub, n);
    auto piv = rref_in_place(K, S);
    std::vector<bool> is_piv(n, false);
    for (auto p : piv) is_piv[p] = true;
    Quotient q;
    for (std::size_t r = 0; r < piv.size(); ++r) q.sub.push_back(S.row(r));
    for (std::size_t i = 0; i < n; ++i)
        if (!is_piv[i]) q.kept.push_back(i);
    auto project = [&](Vec v) {
        for (std::size_t r = 0; r < piv.size(); ++r) {
            Elem f = v[piv[r]];
            if (f.v == 0) continue;
            Elem nf = K.neg(f);
            for (std::size_t j = 0; j < n; ++j)
                if (q.sub[r][j].v) v[j] = K.add(v[j], K.mul(nf, q.sub[r][j]));
        }
        Vec out(q.kept.size());
        for (std::size_t k = 0; k < q.kept.size(); ++k) out[k] = v[q.kept[k]];
        return out;
    };
    MatrixRep& Q = q.rep;
    Q.name = V.name + "_quot";
    Q.algebra = V.algebra;
    Q.field = V.field;
    Q.chi = V.chi;
    for (auto i : q.kept) Q.parity.push_back(V.parity[i]);
    for (auto& A : V.action) {
        Matrix M(q.kept.size(), q.kept.size());
        for (std::size_t c = 0; c < q.kept.size(); ++c) {
            Vec col = project(A.col(q.kept[c]));
            for (std::size_t r = 0; r < q.kept.size(); ++r) M(r, c) = col[r];
        }
        Q.action.push_back(std::move(M));
    }
    if (V.cyclic) {
        Vec v(n);
        v[*V.cyclic] = K.one();
        Vec pv = project(v);
        for (std::size_t k = 0; k < pv.size(); ++k)
            if (pv[k].v) {
                Q.cyclic = k;
                break;
            }
    }
    return q;
}

// ---------------------------------------------------------------------------
// Intertwiners

enum class HomParity { Even, Odd, Both };

/// Basis of graded homomorphisms T: V -> W with T x = (-1)^{|T||x|} x T.
/// Each matrix is homogeneous; even ones are listed first.
inline std::vector<Matrix> hom_space(const MatrixRep& V, const MatrixRep& W, HomParity which = HomParity::Both) {
    if (V.algebra->dim() != W.algebra->dim()) throw std::invalid_argument("hom_space: different algebras");
    if (!V.field->same_as(*W.field)) throw std::invalid_argument("hom_space: different fields");
    if (V.chi.values != W.chi.values) throw std::invalid_argument("hom_space: p-characters differ");
    const Field& K = V.F();
    const std::size_t n = V.dim(), m = W.dim();
    const auto& g = *V.algebra;
    std::vector<Matrix> out;
    for (unsigned tpar : {0u, 1u}) {
        if ((which == HomParity::Even && tpar) || (which == HomParity::Odd && !tpar)) continue;
        // unknowns: entries T(r, c) with parity(r) = parity(c) + tpar
        std::vector<std::pair<std::size_t, std::size_t>> vars;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (((W.parity[r] + V.parity[c]) & 1u) == tpar) vars.emplace_back(r, c);
        if (vars.empty()) continue;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> var_id;
        for (std::size_t k = 0; k < vars.size(); ++k) var_id[vars[k]] = k;
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < g.dim(); ++i) {
            const Matrix& A = V[i];
            const Matrix& B = W[i];
            const Elem sgn = (tpar && g.is_odd(i)) ? K.from_int(-1) : K.one();
            // (T A - sgn B T)(r, c) = sum_k T(r,k) A(k,c) - sgn sum_k B(r,k) T(k,c)
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    Vec row(vars.size());
                    bool any = false;
                    for (std::size_t k = 0; k < n; ++k)
                        if (A(k, c).v) {
                            auto it = var_id.find({r, k});
                            if (it != var_id.end()) {
                                row[it->second] = K.add(row[it->second], A(k, c));
                                any = true;
                            }
                        }
                    for (std::size_t k = 0; k < m; ++k)
                        if (B(r, k).v) {
                            auto it = var_id.find({k, c});
                            if (it != var_id.end()) {
                                row[it->second] = K.sub(row[it->second], K.mul(sgn, B(r, k)));
                                any = true;
                            }
                        }
                    if (any) rows.push_back(std::move(row));
                }
        }
        std::vector<Vec> ker;
        if (rows.empty()) {
            for (std::size_t k = 0; k < vars.size(); ++k) {
                Vec v(vars.size());
                v[k] = K.one();
                ker.push_back(v);
            }
        } else {
            ker = kernel_basis(K, Matrix::from_rows(rows, vars.size()));
        }
        for (auto& v : ker) {
            Matrix T(m, n);
            for (std::size_t k = 0; k < vars.size(); ++k) T(vars[k].first, vars[k].second) = v[k];
            out.push_back(std::move(T));
        }
    }
    return out;
}

inline bool matrix_is_even(const MatrixRep& V, const MatrixRep& W, const Matrix& T) {
    for (std::size_t r = 0; r < T.rows(); ++r)
        for (std::size_t c = 0; c < T.cols(); ++c)
            if (T(r, c).v && W.parity[r] != V.parity[c]) return false;
    return true;
}

enum class EndoType { M, Q, SplitNeeded, Other };

inline const char* to_string(EndoType t) {
    switch (t) {
        case EndoType::M: return "M";
        case EndoType::Q: return "Q";
        case EndoType::SplitNeeded: return "split-needed";
        case EndoType::Other: return "other";
    }
    return "?";
}

inline EndoType endo_type(const MatrixRep& V) {
    auto ev = hom_space(V, V, HomParity::Even), od = hom_space(V, V, HomParity::Odd);
    const std::size_t d = ev.size() + od.size();
    if (d == 1) return EndoType::M;
    if (d == 2 && od.size() == 1) return EndoType::Q;
    if (d == 2) return EndoType::SplitNeeded;
    return EndoType::Other;
}

/// Pi V: same space, parities swapped, odd generators act with a sign so
/// that the identity map V -> Pi V is an odd isomorphism.
inline MatrixRep parity_flip(const MatrixRep& V) {
    MatrixRep P = V;
    P.name = "Pi(" + V.name + ")";
    for (auto& x : P.parity) x ^= 1u;
    for (std::size_t i = 0; i < V.algebra->dim(); ++i)
        if (V.algebra->is_odd(i)) P.action[i] = mat_scale(V.F(), V.F().from_int(-1), V.action[i]);
    return P;
}

/// Scalar extension along an embedding of fields.
inline MatrixRep extend_scalars(const MatrixRep& V, const FieldPtr& big) {
    FieldEmbedding emb(V.field, big);
    MatrixRep W = V;
    W.field = big;
    W.chi.field = big;
    for (auto& x : W.chi.values) x = emb(x);
    for (auto& A : W.action) A = embed_matrix(emb, A);
    return W;
}

struct IsoVerdict {
    bool isomorphic = false;
    bool certified = true;         // false only when non-isomorphism could not be proven
    unsigned degree = 0;           // parity of the isomorphism found
    std::optional<Matrix> map;     // the intertwiner
    std::size_t hom_dim = 0;
};

namespace detail {

/// det(sum c_i T_i) vanishes identically?  Checked on a grid S^k with |S| > n
/// inside an extension field large enough to hold S.
inline bool determinant_identically_zero(const Field& K, const std::vector<Matrix>& Ts, bool* affordable) {
    const std::size_t n = Ts[0].rows(), k = Ts.size();
    unsigned deg = K.degree();
    FieldPtr big = Field::make(K.characteristic(), deg);
    while (big->order() <= n) {
        deg *= 2;
        big = Field::make(K.characteristic(), deg);
    }
    double cells = 1;
    for (std::size_t i = 0; i < k; ++i) cells *= double(n + 1);
    *affordable = cells <= 2e5;
    if (!*affordable) return false;
    FieldPtr Kp = Field::make(K.characteristic(), K.degree());
    FieldEmbedding emb(Kp, big);
    std::vector<Matrix> Tb;
    for (auto& T : Ts) Tb.push_back(embed_matrix(emb, T));
    std::vector<std::uint32_t> idx(k, 0);
    for (;;) {
        Matrix S(n, n);
        for (std::size_t i = 0; i < k; ++i) mat_axpy(*big, S, Elem{idx[i]}, Tb[i]);
        if (determinant(*big, S).v) return false;
        std::size_t i = 0;
        while (i < k && ++idx[i] == n + 1) idx[i++] = 0;
        if (i == k) return true;
    }
}

inline std::optional<Matrix> find_invertible(const Field& K, const std::vector<Matrix>& Ts, unsigned seed) {
    for (auto& T : Ts)
        if (determinant(K, T).v) return T;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, K.order() - 1);
    for (int t = 0; t < 200; ++t) {
        Matrix S(Ts[0].rows(), Ts[0].cols());
        for (auto& T : Ts) mat_axpy(K, S, Elem{coef(rng)}, T);
        if (determinant(K, S).v) return S;
    }
    return std::nullopt;
}

}  // namespace detail

/// Isomorphism test; with degree Even only even intertwiners count.
inline IsoVerdict iso_test(const MatrixRep& V, const MatrixRep& W, HomParity degree = HomParity::Even) {
    IsoVerdict out;
    if (V.dim() != W.dim()) return out;
    const Field& K = V.F();
    for (unsigned par : {0u, 1u}) {
        if (degree == HomParity::Even && par) continue;
        if (degree == HomParity::Odd && !par) continue;
        auto H = hom_space(V, W, par ? HomParity::Odd : HomParity::Even);
        out.hom_dim += H.size();
        if (H.empty()) continue;
        if (auto T = detail::find_invertible(K, H, 17)) {
            out.isomorphic = true;
            out.degree = par;
            out.map = *T;
            return out;
        }
        bool affordable = true;
        const bool zero = detail::determinant_identically_zero(K, H, &affordable);
        if (!affordable) out.certified = false;
        else if (!zero) throw std::logic_error("invertible intertwiner exists but was not sampled");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Heads and twists

/// Quotient of a cyclic module by its maximal submodule.
inline MatrixRep simple_head(const MatrixRep& V) {
    if (!V.cyclic) throw std::invalid_argument("simple_head needs a marked cyclic vector");
    MatrixRep Q = V;
    for (;;) {
        auto irr = is_irreducible(Q);
        if (irr.irreducible) break;
        Q = quotient_rep(Q, irr.submodule).rep;
        if (!Q.cyclic) throw std::logic_error("cyclic vector lies in a proper submodule");
    }
    // uniqueness of the head: a second maximal submodule with the same
    // quotient would make Hom(V, L) larger than End(L) in even degree
    const std::size_t hv = hom_space(V, Q, HomParity::Even).size();
    const std::size_t hl = hom_space(Q, Q, HomParity::Even).size();
    if (hv != hl) throw std::runtime_error("head of " + V.name + " is not unique");
    Q.name = "L(" + V.name + ")";
    return Q;
}

/// V twisted by a bracket- and p-map-preserving automorphism theta of g:
/// x acts as M_V(theta^{-1} x).  `theta` has columns theta(x_j).
inline MatrixRep twist_by_automorphism(const MatrixRep& V, const Matrix& theta) {
    const auto& g = *V.algebra;
    const Field& F = g.field();
    const std::size_t n = g.dim();
    auto inv = inverse(F, theta);
    if (!inv) throw std::invalid_argument("automorphism is not invertible");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = mat_vec(F, theta, g.bracket(i, j));
            Vec rhs = g.bracket(theta.col(i), theta.col(j));
            if (lhs != rhs) throw std::invalid_argument("map does not preserve the bracket on (" + g.basis_name(i) + ", " + g.basis_name(j) + ")");
        }
    for (std::size_t j = 0; j < n; ++j) {
        auto par = g.parity_of(theta.col(j));
        if (!par || (*par != g.parity(j) && !is_zero_vec(theta.col(j)))) throw std::invalid_argument("map does not preserve parity");
    }
    for (auto i : g.even_indices()) {
        Matrix lhs = mat_pow(F, g.ad_matrix(theta.col(i)), g.p());
        Matrix rhs = g.ad_matrix(mat_vec(F, theta, g.p_map(i)));
        if (!(lhs == rhs)) throw std::invalid_argument("map does not preserve the p-map on " + g.basis_name(i));
    }
    MatrixRep W = V;
    W.name = V.name + "^theta";
    const Field& K = V.F();
    for (std::size_t i = 0; i < n; ++i) {
        Matrix M(V.dim(), V.dim());
        for (std::size_t k = 0; k < n; ++k)
            if ((*inv)(k, i).v) mat_axpy(K, M, Elem{(*inv)(k, i).v}, V.action[k]);
        W.action[i] = std::move(M);
    }
    // chi'(x_i) = chi(theta^{-1} x_i)
    for (std::size_t i = 0; i < n; ++i) {
        Elem s = K.zero();
        for (std::size_t k = 0; k < n; ++k) s = K.add(s, K.mul(Elem{(*inv)(k, i).v}, V.chi.values[k]));
        W.chi.values[i] = s;
    }
    W.chi.tag = classify(g, W.chi);
    W.cyclic.reset();
    return W;
}

// ---------------------------------------------------------------------------
// Census of simple modules for one p-character

struct CensusRow {
    Weight lambda;
    std::size_t dim = 0;
    bool irreducible = false;
    EndoType type = EndoType::Other;
    std::size_t cls = 0;              // isomorphism class (any degree)
    std::optional<unsigned> degree;   // degree of the iso to the class representative
    MatrixRep module;
};

struct Census {
    PCharacter chi;
    std::vector<CensusRow> rows;
    std::size_t classes = 0;
    /// Simple objects of the even category: each M-type class gives M and Pi M,
    /// each Q-type class gives one.
    std::size_t even_category_size() const {
        std::vector<bool> seen(classes, false);
        std::size_t n = 0;
        for (auto& r : rows)
            if (!seen[r.cls]) {
                seen[r.cls] = true;
                n += r.type == EndoType::Q ? 1 : 2;
            }
        return n;
    }
};

/// One row per lambda in Lambda(chi): the baby Verma when it is simple,
/// otherwise its simple head.  Classes are merged by iso_test in any degree.
inline Census census(const AlgebraPtr& g, const PCharacter& chi) {
    Census c;
    c.chi = chi;
    auto L = lambda_set(*g, chi);
    if (L.weights.empty()) throw std::invalid_argument(L.hint);
    std::vector<std::size_t> reps;
    for (auto& lam : L.weights) {
        CensusRow row;
        row.lambda = lam;
        MatrixRep Z = baby_verma(g, chi, lam);
        row.irreducible = is_irreducible(Z).irreducible;
        row.module = row.irreducible ? std::move(Z) : simple_head(Z);
        row.dim = row.module.dim();
        row.type = endo_type(row.module);
        row.cls = reps.size();
        for (std::size_t k = 0; k < reps.size(); ++k) {
            const auto& other = c.rows[reps[k]];
            if (other.dim != row.dim) continue;
            auto v = iso_test(other.module, row.module, HomParity::Both);
            if (!v.certified) throw std::runtime_error("census: isomorphism test not certified");
            if (v.isomorphic) {
                row.cls = k;
                row.degree = v.degree;
                break;
            }
        }
        if (row.cls == reps.size()) {
            reps.push_back(c.rows.size());
            row.degree = 0;
        }
        c.rows.push_back(std::move(row));
    }
    c.classes = reps.size();
    return c;
}

}  // namespace superkern
