#pragma once

// Universal enveloping algebra U(g) on the PBW basis of the global order.
// Products are normalized by memoized left multiplication by generators.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "superkern/superalg.hpp"

namespace superkern {

inline constexpr std::size_t kMaxDim = 24;

/// PBW monomial: exponent of each basis element in global order.  Odd
/// exponents are 0 or 1.
struct Monomial {
    std::array<std::uint8_t, kMaxDim> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_one() const { return degree() == 0; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Graded order: degree first, then reverse lexicographic on exponents.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e > b.e;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

class Envelope;

/// Sparse element of U(g): sorted (monomial, coefficient) terms over F_p.
class EnvElement {
public:
    using Term = std::pair<Monomial, Elem>;

    EnvElement() = default;

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Envelope* owner() const { return owner_; }

    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m.degree()));
        return d;
    }

    Elem coeff(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) { return t.first < k; });
        return (it != terms_.end() && it->first == m) ? it->second : Elem{0};
    }

    friend bool operator==(const EnvElement& a, const EnvElement& b) { return a.terms_ == b.terms_; }

private:
    friend class Envelope;
    friend class TermAccumulator;
    std::vector<Term> terms_;
    const Envelope* owner_ = nullptr;
};

/// Hash-map accumulator used while building sums.
class TermAccumulator {
public:
    explicit TermAccumulator(const Field& F) : F_(&F) {}

    void add(const Monomial& m, Elem c) {
        if (c.v == 0) return;
        auto [it, fresh] = map_.try_emplace(m, c);
        if (!fresh) it->second = F_->add(it->second, c);
    }
    void add(const EnvElement& u, Elem scale) {
        if (scale.v == 0) return;
        for (auto& [m, c] : u.terms()) add(m, F_->mul(c, scale));
    }

    EnvElement finish(const Envelope* owner) {
        EnvElement out;
        out.owner_ = owner;
        out.terms_.reserve(map_.size());
        for (auto& [m, c] : map_)
            if (c.v) out.terms_.emplace_back(m, c);
        std::sort(out.terms_.begin(), out.terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        map_.clear();
        return out;
    }

private:
    const Field* F_;
    std::unordered_map<Monomial, Elem, MonomialHash> map_;
};

struct SemilinearityReport {
    bool ok = true;
    std::vector<std::string> failing_pairs;
};

class Envelope {
public:
    explicit Envelope(AlgebraPtr g) : g_(std::move(g)), F_(&g_->field()) {
        if (g_->dim() > kMaxDim) throw SpecError("algebra dimension exceeds the PBW engine limit of " + std::to_string(kMaxDim));
        half_ = F_->inv(F_->from_int(2));
    }

    const SuperAlgebra& algebra() const { return *g_; }
    const AlgebraPtr& algebra_ptr() const { return g_; }
    const Field& field() const { return *F_; }
    std::size_t dim() const { return g_->dim(); }

    // ---- construction ---------------------------------------------------

    EnvElement zero() const { return make({}); }
    EnvElement scalar(Elem c) const {
        if (c.v == 0) return zero();
        return make({{Monomial{}, c}});
    }
    EnvElement scalar(long long c) const { return scalar(F_->from_int(c)); }
    EnvElement one() const { return scalar(F_->one()); }
    EnvElement gen(std::size_t i) const {
        Monomial m;
        m.e[i] = 1;
        return make({{m, F_->one()}});
    }
    EnvElement gen(const std::string& name) const { return gen(g_->index(name)); }
    EnvElement monomial(const Monomial& m, Elem c) const {
        if (c.v == 0) return zero();
        return make({{m, c}});
    }
    /// Element of g (degree one) from coordinates.
    EnvElement from_vec(const Vec& v) const {
        TermAccumulator acc(*F_);
        for (std::size_t i = 0; i < dim(); ++i)
            if (v[i].v) {
                Monomial m;
                m.e[i] = 1;
                acc.add(m, v[i]);
            }
        return acc.finish(this);
    }

    // ---- linear structure ----------------------------------------------

    EnvElement add(const EnvElement& a, const EnvElement& b) const { return combine(a, F_->one(), b, F_->one()); }
    EnvElement sub(const EnvElement& a, const EnvElement& b) const { return combine(a, F_->one(), b, F_->from_int(-1)); }
    EnvElement scale(Elem s, const EnvElement& a) const {
        if (s.v == 0) return zero();
        EnvElement out = a;
        out.owner_ = this;
        for (auto& [m, c] : out.terms_) c = F_->mul(c, s);
        return out;
    }
    EnvElement scale(long long s, const EnvElement& a) const { return scale(F_->from_int(s), a); }
    EnvElement combine(const EnvElement& a, Elem sa, const EnvElement& b, Elem sb) const {
        check(a);
        check(b);
        TermAccumulator acc(*F_);
        acc.add(a, sa);
        acc.add(b, sb);
        return acc.finish(this);
    }
    EnvElement linear_combination(const std::vector<EnvElement>& us, const Vec& cs) const {
        TermAccumulator acc(*F_);
        for (std::size_t i = 0; i < us.size(); ++i) {
            check(us[i]);
            acc.add(us[i], cs[i]);
        }
        return acc.finish(this);
    }

    // ---- products ------------------------------------------------------

    /// x_i * m in normal form (memoized).
    const EnvElement& left_gen(std::size_t i, const Monomial& m) const {
        const Key key{i, m};
        {
            std::shared_lock lock(memo_mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        EnvElement r = compute_left_gen(i, m);
        std::unique_lock lock(memo_mu_);
        auto [it, fresh] = memo_.try_emplace(key, std::move(r));
        return it->second;
    }

    /// x_i * u for arbitrary u.
    EnvElement left_gen(std::size_t i, const EnvElement& u) const {
        check(u);
        TermAccumulator acc(*F_);
        for (auto& [m, c] : u.terms()) acc.add(left_gen(i, m), c);
        return acc.finish(this);
    }

    /// m * u where m is a PBW monomial.
    EnvElement left_monomial(const Monomial& m, const EnvElement& u) const {
        EnvElement w = u;
        for (std::size_t i = dim(); i-- > 0;)
            for (unsigned k = 0; k < m.e[i]; ++k) w = left_gen(i, w);
        return w;
    }

    EnvElement multiply(const EnvElement& u, const EnvElement& v) const {
        check(u);
        check(v);
        if (u.is_zero() || v.is_zero()) return zero();
        TermAccumulator acc(*F_);
        for (auto& [m, c] : u.terms()) acc.add(left_monomial(m, v), c);
        return acc.finish(this);
    }

    EnvElement power(const EnvElement& u, unsigned n) const {
        EnvElement r = one();
        for (unsigned k = 0; k < n; ++k) r = multiply(r, u);
        return r;
    }

    /// Normal form of coeff * x_{w0} x_{w1} ... x_{wn}.
    EnvElement straighten(const std::vector<std::size_t>& word, Elem coeff) const {
        EnvElement w = scalar(coeff);
        for (std::size_t k = word.size(); k-- > 0;) w = left_gen(word[k], w);
        return w;
    }
    EnvElement straighten(const std::vector<std::string>& word, long long coeff = 1) const {
        std::vector<std::size_t> idx;
        for (auto& n : word) idx.push_back(g_->index(n));
        return straighten(idx, F_->from_int(coeff));
    }

    // ---- grading -------------------------------------------------------

    unsigned parity(const Monomial& m) const {
        unsigned s = 0;
        for (auto i : g_->odd_indices()) s += m.e[i];
        return s & 1u;
    }

    /// Parity of u, or -1 if u mixes parities (zero counts as even).
    int parity(const EnvElement& u) const {
        bool ev = false, od = false;
        for (auto& [m, c] : u.terms()) (parity(m) ? od : ev) = true;
        if (ev && od) return -1;
        return od ? 1 : 0;
    }

    std::pair<EnvElement, EnvElement> parity_split(const EnvElement& u) const {
        EnvElement a = make({}), b = make({});
        for (auto& t : u.terms()) (parity(t.first) ? b : a).terms_.push_back(t);
        return {a, b};
    }

    EnvElement truncate(const EnvElement& u, unsigned d) const {
        EnvElement out = make({});
        for (auto& t : u.terms())
            if (t.first.degree() <= d) out.terms_.push_back(t);
        return out;
    }

    /// Top-degree homogeneous component.
    EnvElement top_symbol(const EnvElement& u) const {
        const int d = u.degree();
        EnvElement out = make({});
        for (auto& t : u.terms())
            if (static_cast<int>(t.first.degree()) == d) out.terms_.push_back(t);
        return out;
    }

    // ---- adjoint actions ----------------------------------------------

    /// Supercommutator [u, v] for homogeneous u, v.
    EnvElement supercommutator(const EnvElement& u, const EnvElement& v) const {
        const int pu = parity(u), pv = parity(v);
        if (pu < 0 || pv < 0) throw std::invalid_argument("supercommutator needs homogeneous arguments; split by parity first");
        EnvElement uv = multiply(u, v), vu = multiply(v, u);
        return (pu & pv) ? add(uv, vu) : sub(uv, vu);
    }

    /// ad x_i (u) = x u - (-1)^{|x||u|} u x, extended additively over parity components.
    EnvElement ad(std::size_t i, const EnvElement& u) const {
        check(u);
        if (!g_->is_odd(i)) return sub(left_gen(i, u), right_gen(u, i));
        auto [u0, u1] = parity_split(u);
        EnvElement r0 = sub(left_gen(i, u0), right_gen(u0, i));
        EnvElement r1 = add(left_gen(i, u1), right_gen(u1, i));
        return add(r0, r1);
    }

    /// Twisted action ad_t x_i (u) = x u - (-1)^{|x|(|u|+1)} u x.  Requires
    /// homogeneous u when x_i is odd.
    EnvElement ad_twisted(std::size_t i, const EnvElement& u) const {
        check(u);
        if (!g_->is_odd(i)) return ad(i, u);
        const int pu = parity(u);
        if (pu < 0) throw std::invalid_argument("twisted adjoint action needs a parity-homogeneous element; apply parity_split first");
        EnvElement xu = left_gen(i, u), ux = right_gen(u, i);
        return pu == 0 ? add(xu, ux) : sub(xu, ux);
    }

    EnvElement right_gen(const EnvElement& u, std::size_t i) const { return multiply(u, gen(i)); }

    // ---- p-center ------------------------------------------------------

    /// xi_i = x_i^p - x_i^[p].
    EnvElement xi(std::size_t i) const {
        if (g_->is_odd(i)) throw std::invalid_argument("xi is defined for even basis elements only");
        Monomial m;
        m.e[i] = static_cast<std::uint8_t>(g_->p());
        return sub(monomial(m, F_->one()), from_vec(g_->p_map(i)));
    }
    EnvElement xi(const std::string& name) const { return xi(g_->index(name)); }

    /// For each pair of even basis elements x, y: (x+y)^p - x^p - y^p must be
    /// an element w of g (Jacobson), and with (x+y)^[p] := x^[p] + y^[p] + w
    /// we need ad((x+y)^[p]) = ad(x+y)^p.  Together these give
    /// xi(x+y) = xi(x) + xi(y).
    SemilinearityReport semilinearity_check() const {
        SemilinearityReport rep;
        const auto& ev = g_->even_indices();
        const std::uint32_t p = g_->p();
        for (std::size_t a = 0; a < ev.size(); ++a)
            for (std::size_t b = a + 1; b < ev.size(); ++b) {
                const std::size_t i = ev[a], j = ev[b];
                EnvElement s = add(gen(i), gen(j));
                EnvElement lhs = power(s, p);
                Monomial mi, mj;
                mi.e[i] = static_cast<std::uint8_t>(p);
                mj.e[j] = static_cast<std::uint8_t>(p);
                EnvElement rest = sub(sub(lhs, monomial(mi, F_->one())), monomial(mj, F_->one()));
                bool ok = rest.degree() <= 1 && rest.coeff(Monomial{}).v == 0;
                Vec w(dim());
                if (ok)
                    for (auto& [m, c] : rest.terms())
                        for (std::size_t k = 0; k < dim(); ++k)
                            if (m.e[k]) w[k] = c;
                if (ok) {
                    const Field& F = *F_;
                    Vec sum = g_->unit(i);
                    sum[j] = F.one();
                    Matrix lhs_ad = mat_pow(F, g_->ad_matrix(sum), p);
                    Vec rhs_vec = g_->p_map(i);
                    for (std::size_t k = 0; k < dim(); ++k) rhs_vec[k] = F.add(F.add(rhs_vec[k], g_->p_map(j)[k]), w[k]);
                    ok = lhs_ad == g_->ad_matrix(rhs_vec);
                }
                if (!ok) {
                    rep.ok = false;
                    rep.failing_pairs.push_back("(" + g_->basis_name(i) + ", " + g_->basis_name(j) + ")");
                }
            }
        return rep;
    }

    // ---- monomial enumeration -----------------------------------------

    /// All PBW monomials of degree <= d, optionally restricted to toral weight
    /// zero mod p, in the graded order.
    std::vector<Monomial> monomials_up_to(unsigned d, bool weight_zero_only = false) const {
        std::vector<Monomial> out;
        Monomial m;
        enumerate(0, d, m, out);
        if (weight_zero_only && g_->has_weights()) {
            std::erase_if(out, [&](const Monomial& mm) { return !weight_zero(mm); });
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Toral weight of a monomial, reduced mod p.
    std::vector<long long> weight(const Monomial& m) const {
        const std::size_t r = g_->toral_indices().size();
        std::vector<long long> w(r, 0);
        if (!g_->has_weights()) return w;
        for (std::size_t i = 0; i < dim(); ++i)
            if (m.e[i])
                for (std::size_t k = 0; k < r; ++k) w[k] += static_cast<long long>(m.e[i]) * g_->weight(i)[k];
        const long long p = g_->p();
        for (auto& x : w) x = ((x % p) + p) % p;
        return w;
    }
    bool weight_zero(const Monomial& m) const {
        for (auto x : weight(m))
            if (x) return false;
        return true;
    }

    // ---- rendering -----------------------------------------------------

    std::string format_monomial(const Monomial& m) const {
        std::string s;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!m.e[i]) continue;
            if (!s.empty()) s += "*";
            s += g_->basis_name(i);
            if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
        }
        return s.empty() ? "1" : s;
    }

    /// Terms in descending graded order, signed representatives of F_p.
    std::string format(const EnvElement& u) const {
        if (u.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) {
            const long long c = F_->to_signed(it->second);
            const long long a = c < 0 ? -c : c;
            if (first) os << (c < 0 ? "-" : "");
            else os << (c < 0 ? " - " : " + ");
            first = false;
            if (it->first.is_one()) os << a;
            else {
                if (a != 1) os << a << "*";
                os << format_monomial(it->first);
            }
        }
        return os.str();
    }

    /// Exponent vector of a monomial (length dim).
    std::vector<unsigned> exponents(const Monomial& m) const { return {m.e.begin(), m.e.begin() + dim()}; }

private:
    struct Key {
        std::size_t gen;
        Monomial m;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept { return MonomialHash{}(k.m) * 31u + k.gen; }
    };

    EnvElement make(std::vector<EnvElement::Term> t) const {
        EnvElement u;
        u.terms_ = std::move(t);
        u.owner_ = this;
        return u;
    }

    void check(const EnvElement& u) const {
        if (u.owner_ && u.owner_ != this && &u.owner_->algebra() != &algebra())
            throw std::invalid_argument("enveloping algebra elements come from different algebras");
    }

    void enumerate(std::size_t i, unsigned budget, Monomial& m, std::vector<Monomial>& out) const {
        if (i == dim()) {
            out.push_back(m);
            return;
        }
        const unsigned cap = g_->is_odd(i) ? std::min(budget, 1u) : budget;
        for (unsigned a = 0; a <= cap; ++a) {
            m.e[i] = static_cast<std::uint8_t>(a);
            enumerate(i + 1, budget - a, m, out);
        }
        m.e[i] = 0;
    }

    EnvElement compute_left_gen(std::size_t i, const Monomial& m) const {
        std::size_t j = 0;
        while (j < dim() && m.e[j] == 0) ++j;
        if (j == dim() || i < j) {
            Monomial r = m;
            ++r.e[i];
            return make({{r, F_->one()}});
        }
        Monomial rest = m;
        --rest.e[j];
        if (i == j) {
            if (!g_->is_odd(i)) {
                Monomial r = m;
                if (r.e[i] == 255) throw std::overflow_error("PBW exponent overflow");
                ++r.e[i];
                return make({{r, F_->one()}});
            }
            // y y = 1/2 [y, y]
            const Vec& b = g_->bracket(i, i);
            TermAccumulator acc(*F_);
            EnvElement rest_el = make({{rest, F_->one()}});
            for (std::size_t k = 0; k < dim(); ++k)
                if (b[k].v) acc.add(left_gen(k, rest_el), F_->mul(half_, b[k]));
            return acc.finish(this);
        }
        // x_i x_j rest = (-1)^{|i||j|} x_j (x_i rest) + [x_i, x_j] rest
        TermAccumulator acc(*F_);
        const Elem sign = (g_->is_odd(i) && g_->is_odd(j)) ? F_->from_int(-1) : F_->one();
        const EnvElement& inner = left_gen(i, rest);
        for (auto& [mm, c] : inner.terms()) acc.add(left_gen(j, mm), F_->mul(sign, c));
        const Vec& b = g_->bracket(i, j);
        for (std::size_t k = 0; k < dim(); ++k)
            if (b[k].v) acc.add(left_gen(k, rest), b[k]);
        return acc.finish(this);
    }

    AlgebraPtr g_;
    const Field* F_;
    Elem half_;
    mutable std::shared_mutex memo_mu_;
    mutable std::unordered_map<Key, EnvElement, KeyHash> memo_;
};

using EnvelopePtr = std::shared_ptr<const Envelope>;

}  // namespace superkern
