#pragma once

// Degree-truncated centers, anticenters and generated subalgebras of U(g),
// all reduced to kernel and rank computations over F_p.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "superkern/pbw.hpp"

namespace superkern {

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on the number of matrix entries a single solve may allocate.
inline constexpr std::size_t kDefaultBudget = 50'000'000;

/// A linearly independent list of elements of U(g) of degree <= d.
struct Slice {
    unsigned degree = 0;
    std::vector<EnvElement> elements;
    std::vector<std::string> labels;

    std::size_t dim() const { return elements.size(); }
};

/// Column index over a set of PBW monomials.
class MonomialIndex {
public:
    std::size_t operator()(const Monomial& m) {
        auto [it, fresh] = idx_.try_emplace(m, order_.size());
        if (fresh) order_.push_back(m);
        return it->second;
    }
    std::optional<std::size_t> find(const Monomial& m) const {
        auto it = idx_.find(m);
        if (it == idx_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return order_.size(); }
    const std::vector<Monomial>& monomials() const { return order_; }

private:
    std::unordered_map<Monomial, std::size_t, MonomialHash> idx_;
    std::vector<Monomial> order_;
};

/// Coordinates of each element as rows of a matrix over a shared index.
inline Matrix coordinate_rows(const std::vector<EnvElement>& us, MonomialIndex& index) {
    for (auto& u : us)
        for (auto& [m, c] : u.terms()) index(m);
    Matrix rows(us.size(), index.size());
    for (std::size_t r = 0; r < us.size(); ++r)
        for (auto& [m, c] : us[r].terms()) rows(r, *index.find(m)) = c;
    return rows;
}

/// Greedy independent subset (keeps the first occurrence of each new direction).
inline Slice independent_slice(const Envelope& U, unsigned d, const std::vector<EnvElement>& cands,
                               const std::vector<std::string>& labels) {
    Slice s;
    s.degree = d;
    MonomialIndex index;
    std::vector<Vec> reduced;  // echelon rows seen so far
    std::vector<std::size_t> pivots;
    const Field& F = U.field();
    for (std::size_t k = 0; k < cands.size(); ++k) {
        for (auto& [m, c] : cands[k].terms()) index(m);
        Vec v(index.size());
        for (auto& [m, c] : cands[k].terms()) v[*index.find(m)] = c;
        for (auto& r : reduced) r.resize(index.size());
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            Elem f = v[pivots[r]];
            if (f.v == 0) continue;
            Elem nf = F.neg(f);
            for (std::size_t j = 0; j < v.size(); ++j)
                if (reduced[r][j].v) v[j] = F.add(v[j], F.mul(nf, reduced[r][j]));
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv].v == 0) ++piv;
        if (piv == v.size()) continue;
        Elem inv = F.inv(v[piv]);
        for (auto& x : v) x = F.mul(x, inv);
        // keep earlier rows reduced against the new pivot
        for (auto& r : reduced) {
            Elem f = r[piv];
            if (f.v == 0) continue;
            Elem nf = F.neg(f);
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j].v) r[j] = F.add(r[j], F.mul(nf, v[j]));
        }
        reduced.push_back(std::move(v));
        pivots.push_back(piv);
        s.elements.push_back(cands[k]);
        s.labels.push_back(k < labels.size() ? labels[k] : "");
    }
    return s;
}

/// Basis of {u in U^{<=d} : ad x_i (u) = 0 for all i} (twisted: ad_t).
/// Central and anticentral elements have toral weight zero mod p, so only
/// those monomials are used as unknowns.
inline Slice centralizer_slice(const Envelope& U, unsigned d, bool twisted, std::size_t budget = kDefaultBudget) {
    const auto& g = U.algebra();
    const auto cols = U.monomials_up_to(d, true);
    std::vector<std::size_t> acting;
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (!(g.has_weights() && g.block(i) == Block::Toral)) acting.push_back(i);

    // images per generator, rows indexed by monomial
    std::vector<MonomialIndex> row_index(acting.size());
    std::vector<std::vector<EnvElement>> images(acting.size());
    for (std::size_t a = 0; a < acting.size(); ++a) {
        images[a].reserve(cols.size());
        for (auto& m : cols) {
            EnvElement u = U.monomial(m, U.field().one());
            EnvElement img = twisted ? U.ad_twisted(acting[a], u) : U.ad(acting[a], u);
            for (auto& [mm, c] : img.terms()) row_index[a](mm);
            images[a].push_back(std::move(img));
        }
    }
    std::size_t rows = 0;
    for (auto& ri : row_index) rows += ri.size();
    if (rows * cols.size() > budget)
        throw BudgetError("centralizer system of size " + std::to_string(rows) + " x " + std::to_string(cols.size()) +
                          " exceeds the budget of " + std::to_string(budget) + " entries");
    Matrix M(rows, cols.size());
    std::size_t offset = 0;
    for (std::size_t a = 0; a < acting.size(); ++a) {
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (auto& [mm, c] : images[a][j].terms()) M(offset + *row_index[a].find(mm), j) = c;
        offset += row_index[a].size();
    }
    Slice s;
    s.degree = d;
    for (auto& v : kernel_basis(U.field(), M)) {
        TermAccumulator acc(U.field());
        for (std::size_t j = 0; j < cols.size(); ++j) acc.add(cols[j], v[j]);
        s.elements.push_back(acc.finish(&U));
        s.labels.push_back("");
    }
    return s;
}

struct Generator {
    std::string name;
    EnvElement value;
};

/// Span of all products of generators whose degrees sum to at most d.
/// Scalars are always included.  With `assert_commutative`, generators must
/// pairwise commute.
inline Slice subalgebra_slice(const Envelope& U, const std::vector<Generator>& gens, unsigned d, bool assert_commutative = true) {
    if (assert_commutative)
        for (std::size_t a = 0; a < gens.size(); ++a)
            for (std::size_t b = a + 1; b < gens.size(); ++b)
                if (!(U.multiply(gens[a].value, gens[b].value) == U.multiply(gens[b].value, gens[a].value)))
                    throw std::invalid_argument("generators " + gens[a].name + " and " + gens[b].name + " do not commute");
    std::vector<const Generator*> pos;
    for (auto& g : gens)
        if (g.value.degree() > 0) pos.push_back(&g);

    std::vector<EnvElement> cands{U.one()};
    std::vector<std::string> labels{"1"};
    // depth-first over nondecreasing generator sequences
    std::function<void(std::size_t, unsigned, const EnvElement&, const std::string&)> rec =
        [&](std::size_t start, unsigned used, const EnvElement& acc, const std::string& label) {
            for (std::size_t k = start; k < pos.size(); ++k) {
                const unsigned dk = static_cast<unsigned>(pos[k]->value.degree());
                if (used + dk > d) continue;
                EnvElement next = U.multiply(acc, pos[k]->value);
                std::string nl = label.empty() ? pos[k]->name : label + "*" + pos[k]->name;
                cands.push_back(next);
                labels.push_back(nl);
                rec(k, used + dk, next, nl);
            }
        };
    rec(0, 0, U.one(), "");
    return independent_slice(U, d, cands, labels);
}

enum class SliceRelation { Equal, FirstInSecond, SecondInFirst, Incomparable };

inline const char* to_string(SliceRelation r) {
    switch (r) {
        case SliceRelation::Equal: return "equal";
        case SliceRelation::FirstInSecond: return "A<B";
        case SliceRelation::SecondInFirst: return "B<A";
        case SliceRelation::Incomparable: return "incomparable";
    }
    return "?";
}

struct SliceComparison {
    SliceRelation relation = SliceRelation::Equal;
    std::optional<EnvElement> witness_in_a;  // element of A outside B
    std::optional<EnvElement> witness_in_b;  // element of B outside A
    std::size_t dim_a = 0, dim_b = 0, dim_sum = 0;
};

inline SliceComparison slice_compare(const Envelope& U, const Slice& A, const Slice& B) {
    if (A.degree != B.degree)
        throw std::invalid_argument("slices have different degree bounds (" + std::to_string(A.degree) + " vs " + std::to_string(B.degree) + ")");
    const Field& F = U.field();
    MonomialIndex index;
    for (const Slice* sl : {&A, &B})
        for (auto& u : sl->elements)
            for (auto& [m, c] : u.terms()) index(m);
    Matrix ma = coordinate_rows(A.elements, index);
    Matrix mb = coordinate_rows(B.elements, index);
    SliceComparison out;
    out.dim_a = rank(F, ma);
    out.dim_b = rank(F, mb);
    Matrix both = ma.vstack(mb);
    out.dim_sum = index.size() == 0 ? 0 : rank(F, both);
    const bool a_in_b = out.dim_sum == out.dim_b, b_in_a = out.dim_sum == out.dim_a;
    auto outside = [&](const Matrix& base, const std::vector<EnvElement>& cand) -> std::optional<EnvElement> {
        const std::size_t r0 = base.rows() ? rank(F, base) : 0;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            Matrix row(1, index.size());
            for (auto& [m, c] : cand[k].terms()) row(0, *index.find(m)) = c;
            if (rank(F, base.rows() ? base.vstack(row) : row) > r0) return cand[k];
        }
        return std::nullopt;
    };
    if (a_in_b && b_in_a) out.relation = SliceRelation::Equal;
    else if (a_in_b) {
        out.relation = SliceRelation::FirstInSecond;
        out.witness_in_b = outside(ma, B.elements);
    } else if (b_in_a) {
        out.relation = SliceRelation::SecondInFirst;
        out.witness_in_a = outside(mb, A.elements);
    } else {
        out.relation = SliceRelation::Incomparable;
        out.witness_in_a = outside(mb, A.elements);
        out.witness_in_b = outside(ma, B.elements);
    }
    return out;
}

/// Image of a slice under left multiplication by s (kept as a slice of degree d).
inline Slice left_multiply(const Envelope& U, const EnvElement& s, const Slice& X, unsigned d) {
    std::vector<EnvElement> cands;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < X.dim(); ++k) {
        cands.push_back(U.multiply(s, X.elements[k]));
        labels.push_back(X.labels[k].empty() ? "" : "S*" + X.labels[k]);
    }
    return independent_slice(U, d, cands, labels);
}

/// True when every element of the slice has zero odd component.
inline bool slice_is_even(const Envelope& U, const Slice& s) {
    for (auto& u : s.elements)
        if (!U.parity_split(u).second.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Relations among commuting elements

/// Polynomial over F_p in named variables, exponent vectors per term.
struct Polynomial {
    std::vector<std::string> vars;
    std::vector<std::pair<std::vector<unsigned>, Elem>> terms;

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (auto& [e, c] : terms) d = std::max(d, e[var]);
        return d;
    }

    Elem coeff(const std::vector<unsigned>& e) const {
        for (auto& [ee, c] : terms)
            if (ee == e) return c;
        return Elem{0};
    }

    /// Value at a point over any field containing F_p (coefficients embedded as prime-field elements).
    Elem evaluate(const Field& K, const std::vector<Elem>& pt) const {
        Elem s = K.zero();
        for (auto& [e, c] : terms) {
            Elem t = K.from_int(c.v);
            for (std::size_t i = 0; i < e.size(); ++i) t = K.mul(t, K.pow(pt[i], e[i]));
            s = K.add(s, t);
        }
        return s;
    }

    Polynomial derivative(std::size_t var, const Field& Fp) const {
        Polynomial d{vars, {}};
        for (auto& [e, c] : terms) {
            if (e[var] == 0) continue;
            Elem nc = Fp.mul(c, Fp.from_int(e[var]));
            if (nc.v == 0) continue;
            auto ne = e;
            --ne[var];
            d.terms.emplace_back(ne, nc);
        }
        return d;
    }

    std::string format(const Field& Fp) const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [e, c] : terms) {
            const long long v = Fp.to_signed(c);
            const long long a = v < 0 ? -v : v;
            s += first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += vars[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) s += std::to_string(a);
            else s += (a != 1 ? std::to_string(a) + "*" : "") + mono;
        }
        return s;
    }
};

struct RelationBound {
    std::vector<unsigned> max_exponent;  // per variable
    unsigned max_filtration = 0;         // sum of exponent * degree(element)
};

struct RelationSet {
    std::vector<std::string> vars;
    std::vector<std::vector<unsigned>> monomials;  // columns of the evaluation matrix
    std::vector<Polynomial> relations;
};

/// All linear relations among the monomials (within the bound) in the given
/// pairwise commuting elements, as a kernel basis of the evaluation matrix.
inline RelationSet find_relations(const Envelope& U, const std::vector<Generator>& elems, const RelationBound& bound,
                                  std::size_t budget = kDefaultBudget) {
    const std::size_t n = elems.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!(U.multiply(elems[a].value, elems[b].value) == U.multiply(elems[b].value, elems[a].value)))
                throw std::invalid_argument("find_relations: " + elems[a].name + " and " + elems[b].name + " do not commute");
    RelationSet rs;
    for (auto& e : elems) rs.vars.push_back(e.name);
    std::vector<unsigned> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = static_cast<unsigned>(std::max(0, elems[i].value.degree()));

    // enumerate exponent vectors and evaluate incrementally (value(a) = value(a - e_k) * x_k)
    std::map<std::vector<unsigned>, EnvElement> value;
    std::vector<unsigned> cur(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
        if (i == n) {
            rs.monomials.push_back(cur);
            return;
        }
        for (unsigned a = 0; a <= bound.max_exponent[i]; ++a) {
            if (used + a * deg[i] > bound.max_filtration) break;
            cur[i] = a;
            rec(i + 1, used + a * deg[i]);
        }
        cur[i] = 0;
    };
    rec(0, 0);
    std::sort(rs.monomials.begin(), rs.monomials.end(), [](const auto& a, const auto& b) {
        unsigned sa = 0, sb = 0;
        for (auto x : a) sa += x;
        for (auto x : b) sb += x;
        return sa != sb ? sa < sb : a < b;
    });
    std::vector<EnvElement> cols;
    for (auto& m : rs.monomials) {
        EnvElement v = U.one();
        // reuse the product with the last nonzero exponent lowered by one
        std::size_t k = n;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i]) k = i;
        if (k < n) {
            auto prefix = m;
            --prefix[k];
            v = U.multiply(value.at(prefix), elems[k].value);
        }
        value.emplace(m, v);
        cols.push_back(v);
    }
    MonomialIndex index;
    for (auto& c : cols)
        for (auto& [mm, cc] : c.terms()) index(mm);
    if (index.size() * cols.size() > budget)
        throw BudgetError("relation system of size " + std::to_string(index.size()) + " x " + std::to_string(cols.size()) +
                          " exceeds the budget of " + std::to_string(budget) + " entries");
    Matrix M(index.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (auto& [mm, cc] : cols[j].terms()) M(*index.find(mm), j) = cc;
    auto ker = kernel_basis(U.field(), M);
    if (!ker.empty()) {
        // canonical basis: echelon form with pivots at the highest monomials
        Matrix K = Matrix::from_rows(ker, cols.size());
        Matrix rev(K.rows(), K.cols());
        for (std::size_t i = 0; i < K.rows(); ++i)
            for (std::size_t j = 0; j < K.cols(); ++j) rev(i, j) = K(i, K.cols() - 1 - j);
        auto piv = rref_in_place(U.field(), rev);
        ker.clear();
        for (std::size_t r = 0; r < piv.size(); ++r) {
            Vec v(cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) v[j] = rev(r, cols.size() - 1 - j);
            ker.push_back(v);
        }
    }
    for (auto& v : ker) {
        Polynomial poly{rs.vars, {}};
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (v[j].v) poly.terms.emplace_back(rs.monomials[j], v[j]);
        rs.relations.push_back(std::move(poly));
    }
    return rs;
}

/// Evaluate a polynomial on elements of U(g) (multiplying in variable order).
inline EnvElement evaluate_polynomial(const Envelope& U, const Polynomial& f, const std::vector<EnvElement>& xs) {
    EnvElement s = U.zero();
    for (auto& [e, c] : f.terms) {
        EnvElement t = U.scalar(c);
        for (std::size_t i = 0; i < e.size(); ++i) t = U.multiply(t, U.power(xs[i], e[i]));
        s = U.add(s, t);
    }
    return s;
}

}  // namespace superkern
