#pragma once

// Finite fields F_{p^k} for odd p, with elements stored as base-p digit
// strings packed into a single integer (digit i = coefficient of t^i).
// Prime-field elements are therefore the integers 0..p-1 in every extension.

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superkern {

/// Element of some Field.  The value is meaningless without the field it
/// came from; all arithmetic goes through Field.
struct Elem {
    std::uint32_t v = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint32_t value) : v(value) {}

    friend constexpr bool operator==(Elem a, Elem b) { return a.v == b.v; }
    friend constexpr auto operator<=>(Elem a, Elem b) { return a.v <=> b.v; }
};

class FieldError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomial over F_p, low degree first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime: a^(p-2)
    std::uint64_t r = 1, b = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t(p - m[i]) * c) % p);
        }
        trim(a);
    }
    return a;
}

inline bool divides(const Poly& d, const Poly& a, std::uint32_t p) {
    return poly_mod(a, d, p).empty();
}

// Irreducibility by trial division against every monic polynomial of degree
// 1..k/2.  Only intended for the small degrees used here.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t k = f.size() - 1;
    for (std::size_t deg = 1; deg <= k / 2; ++deg) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < deg; ++i) count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            Poly d(deg + 1, 0);
            std::uint64_t x = n;
            for (std::size_t i = 0; i < deg; ++i) {
                d[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            d[deg] = 1;
            if (divides(d, f, p)) return false;
        }
    }
    return true;
}

}  // namespace detail

/// F_{p^k} = F_p[t]/(modulus).  Multiplication uses discrete log tables, so
/// q = p^k is kept small (the desk-scale fields stay well under 10^5).
class Field {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 20;

    Field(std::uint32_t p, unsigned k) : p_(p), k_(k) {
        if (p <= 2 || !detail::is_prime(p))
            throw FieldError("field characteristic must be an odd prime, got " + std::to_string(p));
        if (k == 0) throw FieldError("extension degree must be >= 1");
        q_ = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (std::uint64_t(q_) * p > kMaxOrder) throw FieldError("field order exceeds table budget");
            q_ *= p;
        }
        modulus_ = first_irreducible(p, k);
        build_tables();
    }

    /// Shared instance per (p, k); the modulus convention makes these
    /// interchangeable, so caching is purely a cost saving.
    static std::shared_ptr<const Field> make(std::uint32_t p, unsigned k = 1);

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint32_t order() const { return q_; }
    /// Monic modulus, low degree first (length k+1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }

    /// Image of an integer under Z -> F_p -> F_q.
    Elem from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return Elem{static_cast<std::uint32_t>(r)};
    }

    Elem from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() > k_) throw FieldError("coefficient vector longer than extension degree");
        std::uint32_t v = 0, scale = 1;
        for (auto x : c) {
            v += (x % p_) * scale;
            scale *= p_;
        }
        return Elem{v};
    }

    std::vector<std::uint32_t> coeffs(Elem a) const {
        std::vector<std::uint32_t> c(k_);
        std::uint32_t v = a.v;
        for (unsigned i = 0; i < k_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        return c;
    }

    /// The generator t of F_p[t]/(modulus) (equals a prime-field element when k = 1).
    Elem gen() const { return k_ == 1 ? Elem{0} : Elem{p_}; }

    bool in_prime_field(Elem a) const { return a.v < p_; }

    Elem add(Elem a, Elem b) const {
        if (k_ == 1) {
            std::uint32_t s = a.v + b.v;
            return Elem{s >= p_ ? s - p_ : s};
        }
        std::uint32_t r = 0, scale = 1, x = a.v, y = b.v;
        for (unsigned i = 0; i < k_; ++i) {
            std::uint32_t d = x % p_ + y % p_;
            if (d >= p_) d -= p_;
            r += d * scale;
            scale *= p_;
            x /= p_;
            y /= p_;
        }
        return Elem{r};
    }

    Elem neg(Elem a) const {
        if (k_ == 1) return Elem{a.v == 0 ? 0 : p_ - a.v};
        std::uint32_t r = 0, scale = 1, x = a.v;
        for (unsigned i = 0; i < k_; ++i) {
            std::uint32_t d = x % p_;
            r += (d == 0 ? 0 : p_ - d) * scale;
            scale *= p_;
            x /= p_;
        }
        return Elem{r};
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a.v == 0 || b.v == 0) return Elem{0};
        if (k_ == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t(a.v) * b.v % p_)};
        std::uint32_t s = log_[a.v] + log_[b.v];
        if (s >= q_ - 1) s -= q_ - 1;
        return Elem{exp_[s]};
    }

    std::optional<Elem> try_inv(Elem a) const {
        if (a.v == 0) return std::nullopt;
        if (k_ == 1) return Elem{detail::inv_mod(a.v, p_)};
        std::uint32_t l = log_[a.v];
        return Elem{exp_[l == 0 ? 0 : q_ - 1 - l]};
    }

    Elem inv(Elem a) const {
        auto r = try_inv(a);
        if (!r) throw FieldError("inverse of zero in F_" + std::to_string(q_));
        return *r;
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem frobenius(Elem a) const { return pow(a, p_); }

    /// Primitive element used for the log tables.
    Elem primitive() const { return k_ == 1 ? primitive_prime_ : Elem{exp_[1]}; }

    std::vector<Elem> elements() const {
        std::vector<Elem> out;
        out.reserve(q_);
        for (std::uint32_t v = 0; v < q_; ++v) out.emplace_back(v);
        return out;
    }

    /// Symmetric integer representative of a prime-field element.
    long long to_signed(Elem a) const {
        if (!in_prime_field(a)) throw FieldError("element is not in the prime field");
        return a.v > p_ / 2 ? static_cast<long long>(a.v) - p_ : a.v;
    }

    std::string describe() const {
        if (k_ == 1) return "F_" + std::to_string(p_);
        std::string s = "F_" + std::to_string(q_) + " = F_" + std::to_string(p_) + "[t]/(";
        bool first = true;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            if (modulus_[i] == 0) continue;
            if (!first) s += " + ";
            first = false;
            if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s + ")";
    }

    std::string format(Elem a) const {
        if (k_ == 1) return std::to_string(to_signed(a));
        auto c = coeffs(a);
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

    bool same_as(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }

private:
    // Monic t^k + c_{k-1}t^{k-1} + ... + c_0 with (c_0..c_{k-1}) enumerated as
    // a base-p counter; the first irreducible one wins.
    static std::vector<std::uint32_t> first_irreducible(std::uint32_t p, unsigned k) {
        if (k == 1) return {0, 1};
        std::uint64_t count = 1;
        for (unsigned i = 0; i < k; ++i) count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            detail::Poly f(k + 1, 0);
            std::uint64_t x = n;
            for (unsigned i = 0; i < k; ++i) {
                f[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            f[k] = 1;
            if (f[0] == 0) continue;
            if (detail::is_irreducible(f, p)) return f;
        }
        throw FieldError("no irreducible polynomial found");  // unreachable for prime p
    }

    detail::Poly to_poly(std::uint32_t v) const {
        detail::Poly a(k_);
        for (unsigned i = 0; i < k_; ++i) {
            a[i] = v % p_;
            v /= p_;
        }
        detail::trim(a);
        return a;
    }

    std::uint32_t from_poly(const detail::Poly& a) const {
        std::uint32_t v = 0, scale = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            v += a[i] * scale;
            scale *= p_;
        }
        return v;
    }

    std::uint32_t slow_mul(std::uint32_t x, std::uint32_t y) const {
        auto a = to_poly(x), b = to_poly(y);
        if (a.empty() || b.empty()) return 0;
        detail::Poly c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p_);
        return from_poly(detail::poly_mod(c, modulus_, p_));
    }

    void build_tables() {
        if (k_ == 1) {
            for (std::uint32_t g = 2; g < p_; ++g) {
                std::uint64_t x = 1;
                std::uint32_t ord = 0;
                do {
                    x = x * g % p_;
                    ++ord;
                } while (x != 1);
                if (ord == p_ - 1) {
                    primitive_prime_ = Elem{g};
                    return;
                }
            }
            return;
        }
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        for (std::uint32_t g = 2; g < q_; ++g) {
            std::uint32_t x = 1, ord = 0;
            do {
                x = slow_mul(x, g);
                ++ord;
            } while (x != 1 && ord < q_);
            if (ord != q_ - 1) continue;
            x = 1;
            for (std::uint32_t i = 0; i < q_ - 1; ++i) {
                exp_[i] = x;
                log_[x] = i;
                x = slow_mul(x, g);
            }
            return;
        }
        throw FieldError("no primitive element found");
    }

    std::uint32_t p_;
    unsigned k_;
    std::uint32_t q_ = 1;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_, log_;
    Elem primitive_prime_{1};
};

namespace detail {
struct FieldCacheSlot {
    std::uint32_t p;
    unsigned k;
    std::shared_ptr<const Field> field;
};
}  // namespace detail


inline std::shared_ptr<const Field> Field::make(std::uint32_t p, unsigned k) {
    static std::mutex mu;
    static std::vector<detail::FieldCacheSlot> cache;
    std::lock_guard lock(mu);
    for (auto& slot : cache)
        if (slot.p == p && slot.k == k) return slot.field;
    auto f = std::make_shared<const Field>(p, k);
    cache.push_back({p, k, f});
    return f;
}

using FieldPtr = std::shared_ptr<const Field>;

/// All lambda in F with lambda^p - lambda = c.  Either empty or a coset of
/// the prime field (p solutions).
inline std::vector<Elem> artin_schreier_solve(const Field& F, Elem c) {
    std::vector<Elem> out;
    for (std::uint32_t v = 0; v < F.order(); ++v) {
        Elem x{v};
        if (F.sub(F.frobenius(x), x) == c) {
            // every other root is x + j, j in F_p
            for (std::uint32_t j = 0; j < F.characteristic(); ++j) out.push_back(F.add(x, Elem{j}));
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return out;
}

/// Embedding small -> big of finite fields of the same characteristic with
/// deg(small) | deg(big).  The image of t is the least root of small's modulus.
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
        if (small_->characteristic() != big_->characteristic() || big_->degree() % small_->degree() != 0)
            throw FieldError("no embedding " + small_->describe() + " -> " + big_->describe());
        if (small_->degree() == 1) {
            root_ = Elem{0};
            return;
        }
        const auto& m = small_->modulus();
        for (Elem x : big_->elements()) {
            Elem acc = big_->zero();
            for (std::size_t i = m.size(); i-- > 0;) acc = big_->add(big_->mul(acc, x), Elem{m[i]});
            if (acc == big_->zero()) {
                root_ = x;
                return;
            }
        }
        throw FieldError("modulus has no root in target field");
    }

    Elem operator()(Elem a) const {
        if (small_->degree() == 1) return a;
        auto c = small_->coeffs(a);
        Elem acc = big_->zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = big_->add(big_->mul(acc, root_), Elem{c[i]});
        return acc;
    }

    const FieldPtr& source() const { return small_; }
    const FieldPtr& target() const { return big_; }

private:
    FieldPtr small_, big_;
    Elem root_{0};
};

}  // namespace superkern
