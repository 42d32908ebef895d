#pragma once

// p-characters and reduced enveloping algebras U_chi(g) = U(g) / (x^p - x^[p] - chi(x)^p).

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "superkern/pbw.hpp"

namespace superkern {

enum class OrbitTag { Zero, NilpotentRegular, SemisimpleRegular, Other };

inline const char* to_string(OrbitTag t) {
    switch (t) {
        case OrbitTag::Zero: return "zero";
        case OrbitTag::NilpotentRegular: return "nilpotent";
        case OrbitTag::SemisimpleRegular: return "semisimple";
        case OrbitTag::Other: return "other";
    }
    return "?";
}

/// Linear functional on g_0, stored as values on every basis element (odd
/// entries are zero) in a field of characteristic p.
struct PCharacter {
    std::string name;
    FieldPtr field;
    Vec values;
    OrbitTag tag = OrbitTag::Other;

    Elem operator()(std::size_t i) const { return values.at(i); }
    /// chi(x_i)^p, the scalar by which xi_i acts.
    Elem pth(std::size_t i) const { return field->frobenius(values.at(i)); }
    bool is_zero() const {
        for (auto v : values)
            if (v.v) return false;
        return true;
    }
};

namespace detail {

inline bool is_osp12(const SuperAlgebra& g) {
    return g.dim() == 5 && g.index_of("e") && g.index_of("h") && g.index_of("f") && g.index_of("E") && g.index_of("F") &&
           g.odd_dim() == 2;
}

}  // namespace detail

/// Orbit type: classified for osp(1|2), "other" (or "zero") elsewhere.
inline OrbitTag classify(const SuperAlgebra& g, const PCharacter& chi) {
    if (chi.is_zero()) return OrbitTag::Zero;
    if (!detail::is_osp12(g)) return OrbitTag::Other;
    const Field& K = *chi.field;
    const Elem e = chi(g.index("e")), h = chi(g.index("h")), f = chi(g.index("f"));
    // coadjoint orbits of sl2 through chi identified via the trace form: chi
    // corresponds to the matrix [[h, f], [e, -h]] up to scaling; it is
    // nilpotent iff h^2 + e f = 0.
    const Elem det = K.add(K.mul(h, h), K.mul(e, f));
    return det.v == 0 ? OrbitTag::NilpotentRegular : OrbitTag::SemisimpleRegular;
}

inline PCharacter make_character(const SuperAlgebra& g, FieldPtr K, const std::vector<std::pair<std::string, Elem>>& vals,
                                 std::string name = "") {
    PCharacter chi;
    chi.name = std::move(name);
    chi.field = std::move(K);
    chi.values.assign(g.dim(), Elem{0});
    for (auto& [n, v] : vals) {
        const auto i = g.index(n);
        if (g.is_odd(i)) throw std::invalid_argument("p-characters vanish on the odd part (" + n + ")");
        chi.values[i] = v;
    }
    chi.tag = classify(g, chi);
    return chi;
}

inline PCharacter zero_character(const SuperAlgebra& g, FieldPtr K = nullptr) {
    if (!K) K = g.field_ptr();
    return make_character(g, K, {}, "0");
}

/// chi_0: (e, h, f) -> (0, 0, 1), over F_p.
inline PCharacter osp_chi0(const SuperAlgebra& g) {
    return make_character(g, g.field_ptr(), {{"f", Elem{1}}}, "chi0");
}

/// Least nonzero trace-zero element of F_{p^2}.
inline Elem trace_zero_element(const Field& K) {
    for (std::uint32_t v = 1; v < K.order(); ++v) {
        Elem c{v};
        if (K.add(c, K.frobenius(c)).v == 0) return c;
    }
    throw FieldError("no nonzero trace-zero element");
}

/// chi_1: (e, h, f) -> (0, c^{1/p}, 0) over F_{p^2} with c = chi(h)^p of trace
/// zero, so that Lambda(chi_1) lies in F_{p^2}.
inline PCharacter osp_chi1(const SuperAlgebra& g) {
    auto K = Field::make(g.p(), 2);
    const Elem c = trace_zero_element(*K);
    // Frobenius is an involution on F_{p^2}, so c^{1/p} = c^p
    return make_character(g, K, {{"h", K->frobenius(c)}}, "chi1");
}

/// Reduced PBW basis of U_chi(g) with lazily memoized reduction.
class ReducedAlgebra {
public:
    ReducedAlgebra(EnvelopePtr U, PCharacter chi) : U_(std::move(U)), chi_(std::move(chi)) {
        const auto& g = U_->algebra();
        if (chi_.values.size() != g.dim()) throw std::invalid_argument("p-character has wrong length");
        if (chi_.field->characteristic() != g.p()) throw std::invalid_argument("p-character field has the wrong characteristic");
        enumerate(0);
    }

    const Envelope& envelope() const { return *U_; }
    const EnvelopePtr& envelope_ptr() const { return U_; }
    const SuperAlgebra& algebra() const { return U_->algebra(); }
    const PCharacter& character() const { return chi_; }
    const Field& field() const { return *chi_.field; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Monomial>& basis() const { return basis_; }
    std::size_t index(const Monomial& m) const { return index_.at(m); }

    /// Expected dimension p^s 2^t.
    std::size_t formula_dim() const {
        std::size_t d = 1;
        for (std::size_t i = 0; i < algebra().dim(); ++i) d *= algebra().is_odd(i) ? 2 : algebra().p();
        return d;
    }

    using Sparse = std::vector<std::pair<std::size_t, Elem>>;

    /// Coordinates of u in the reduced basis.
    Vec reduce(const EnvElement& u) const {
        Vec out(dim());
        const Field& K = field();
        for (auto& [m, c] : u.terms())
            for (auto& [j, r] : reduce_monomial(m)) out[j] = K.add(out[j], K.mul(Elem{c.v}, r));
        return out;
    }

    /// Sparse coordinates of u (only nonzero entries, sorted by index).
    Sparse reduce_sparse(const EnvElement& u) const {
        std::unordered_map<std::size_t, Elem> acc;
        const Field& K = field();
        for (auto& [m, c] : u.terms())
            for (auto& [j, r] : reduce_monomial(m)) {
                auto& slot = acc[j];
                slot = K.add(slot, K.mul(Elem{c.v}, r));
            }
        Sparse out;
        for (auto& [j, c] : acc)
            if (c.v) out.emplace_back(j, c);
        std::sort(out.begin(), out.end());
        return out;
    }

    const Sparse& reduce_monomial(const Monomial& m) const {
        {
            std::shared_lock lock(mu_);
            auto it = memo_.find(m);
            if (it != memo_.end()) return it->second;
        }
        Sparse r = compute(m);
        std::unique_lock lock(mu_);
        return memo_.try_emplace(m, std::move(r)).first->second;
    }

    /// Product of two elements given in reduced coordinates.
    Vec multiply(const Vec& a, const Vec& b) const {
        const Field& K = field();
        Vec out(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a[i].v == 0) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (b[j].v == 0) continue;
                const Vec& prod = basis_product(i, j);
                const Elem c = K.mul(a[i], b[j]);
                for (std::size_t k = 0; k < dim(); ++k)
                    if (prod[k].v) out[k] = K.add(out[k], K.mul(c, prod[k]));
            }
        }
        return out;
    }

    const Vec& basis_product(std::size_t i, std::size_t j) const {
        const std::uint64_t key = static_cast<std::uint64_t>(i) * dim() + j;
        {
            std::shared_lock lock(mu_);
            auto it = products_.find(key);
            if (it != products_.end()) return it->second;
        }
        EnvElement prod = U_->multiply(U_->monomial(basis_[i], U_->field().one()), U_->monomial(basis_[j], U_->field().one()));
        Vec r = reduce(prod);
        std::unique_lock lock(mu_);
        return products_.try_emplace(key, std::move(r)).first->second;
    }

    /// Left regular representation of generator x_i.
    Matrix regular_matrix(std::size_t i) const {
        Matrix M(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            Vec col = reduce(U_->left_gen(i, U_->monomial(basis_[j], U_->field().one())));
            for (std::size_t k = 0; k < dim(); ++k) M(k, j) = col[k];
        }
        return M;
    }

private:
    void enumerate(std::size_t i) {
        const auto& g = U_->algebra();
        if (i == g.dim()) {
            index_.emplace(cur_, basis_.size());
            basis_.push_back(cur_);
            return;
        }
        const unsigned cap = g.is_odd(i) ? 1 : g.p() - 1;
        for (unsigned a = 0; a <= cap; ++a) {
            cur_.e[i] = static_cast<std::uint8_t>(a);
            enumerate(i + 1);
        }
        cur_.e[i] = 0;
    }

    Sparse compute(const Monomial& m) const {
        const auto& g = U_->algebra();
        const Field& K = field();
        std::size_t i = 0;
        while (i < g.dim() && !(!g.is_odd(i) && m.e[i] >= g.p())) ++i;
        if (i == g.dim()) return {{index_.at(m), K.one()}};
        // m = prefix * x_i^a * suffix with a >= p; x_i^p = xi_i + x_i^[p] and xi_i is central
        Monomial lowered = m;
        lowered.e[i] = static_cast<std::uint8_t>(m.e[i] - g.p());
        std::unordered_map<std::size_t, Elem> acc;
        const Elem scal = chi_.pth(i);
        if (scal.v)
            for (auto& [k, c] : reduce_monomial(lowered)) acc[k] = K.add(acc[k], K.mul(scal, c));
        Monomial prefix, rest;
        for (std::size_t k = 0; k < g.dim(); ++k) (k < i ? prefix : rest).e[k] = lowered.e[k];
        const EnvElement tail = U_->multiply(U_->from_vec(g.p_map(i)), U_->monomial(rest, U_->field().one()));
        for (auto& [k, c] : reduce_sparse(U_->left_monomial(prefix, tail))) acc[k] = K.add(acc[k], c);
        Sparse out;
        for (auto& [k, c] : acc)
            if (c.v) out.emplace_back(k, c);
        std::sort(out.begin(), out.end());
        return out;
    }

    EnvelopePtr U_;
    PCharacter chi_;
    std::vector<Monomial> basis_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
    Monomial cur_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<Monomial, Sparse, MonomialHash> memo_;
    mutable std::unordered_map<std::uint64_t, Vec> products_;
};

}  // namespace superkern
