#pragma once

// Restricted Lie superalgebras over F_p given by structure constants, with
// optional triangular decomposition, invariant form and integral root data.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "superkern/field.hpp"
#include "superkern/matrix.hpp"

namespace superkern {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Position of a basis element in the triangular decomposition.  The
/// enumerator order is the global PBW order.
enum class Block : std::uint8_t { NegEven = 0, NegOdd = 1, Toral = 2, PosOdd = 3, PosEven = 4, None = 5 };

struct Triangular {
    std::vector<std::size_t> neg_even, neg_odd, toral, pos_odd, pos_even;
};

/// User-facing description, indices refer to even_names followed by odd_names.
struct SuperAlgebraData {
    std::string name;
    std::uint32_t p = 0;
    std::vector<std::string> even_names, odd_names;
    /// brackets[i][j] = coordinates of [x_i, x_j] (dense, length dim).
    std::vector<std::vector<Vec>> brackets;
    /// p_map[i] for even i (length dim vectors).
    std::vector<Vec> p_map;
    std::optional<Triangular> triangular;
    std::optional<Matrix> form;
    /// Integer weight of each basis element on the toral basis (lifted to
    /// characteristic zero); empty when unknown.
    std::vector<std::vector<long long>> weights;
    bool basic_classical = false;
};

struct Root {
    std::vector<long long> weight;  // values on the toral basis
    std::size_t vector = 0;         // index of e_alpha (global order)
    bool odd = false;
};

struct RootDatum {
    std::vector<Root> positive_even, positive_odd;
    std::vector<Root> negative_even, negative_odd;
};

class SuperAlgebra {
public:
    /// Validates shape, reorders the basis into the global PBW order.
    explicit SuperAlgebra(const SuperAlgebraData& d) {
        if (d.p <= 2) throw SpecError("characteristic must be an odd prime (p > 2), got " + std::to_string(d.p));
        field_ = Field::make(d.p, 1);
        name_ = d.name;
        basic_classical_ = d.basic_classical;
        const std::size_t s = d.even_names.size(), t = d.odd_names.size(), n = s + t;
        if (d.brackets.size() != n) throw SpecError("bracket table has wrong number of rows");
        for (auto& row : d.brackets) {
            if (row.size() != n) throw SpecError("bracket table has wrong number of columns");
            for (auto& v : row)
                if (v.size() != n) throw SpecError("bracket value has wrong length");
        }
        if (d.p_map.size() != s) throw SpecError("p_map must list every even basis element");

        // old index -> block
        std::vector<Block> old_block(n, Block::None);
        if (d.triangular) {
            auto assign = [&](const std::vector<std::size_t>& idx, Block b, bool odd) {
                for (auto i : idx) {
                    if (i >= n) throw SpecError("triangular index out of range");
                    if ((i >= s) != odd) throw SpecError("triangular block parity mismatch at index " + std::to_string(i));
                    if (old_block[i] != Block::None) throw SpecError("basis index listed twice in triangular data");
                    old_block[i] = b;
                }
            };
            assign(d.triangular->neg_even, Block::NegEven, false);
            assign(d.triangular->neg_odd, Block::NegOdd, true);
            assign(d.triangular->toral, Block::Toral, false);
            assign(d.triangular->pos_odd, Block::PosOdd, true);
            assign(d.triangular->pos_even, Block::PosEven, false);
            for (std::size_t i = 0; i < n; ++i)
                if (old_block[i] == Block::None) throw SpecError("triangular data does not cover basis index " + std::to_string(i));
        }
        // global order: by block, then user order (even before odd when no triangular data)
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        if (d.triangular) {
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return old_block[a] < old_block[b]; });
        }
        perm_ = order;  // new -> old
        std::vector<std::size_t> inv(n);
        for (std::size_t i = 0; i < n; ++i) inv[order[i]] = i;

        names_.resize(n);
        odd_.resize(n);
        block_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t o = order[i];
            names_[i] = o < s ? d.even_names[o] : d.odd_names[o - s];
            odd_[i] = o >= s;
            block_[i] = old_block[o];
        }
        auto remap = [&](const Vec& v) {
            Vec w(n);
            for (std::size_t k = 0; k < n; ++k) w[inv[k]] = field_->from_int(v[k].v);
            return w;
        };
        brackets_.assign(n, std::vector<Vec>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) brackets_[i][j] = remap(d.brackets[order[i]][order[j]]);
        p_map_.assign(n, Vec{});
        for (std::size_t i = 0; i < n; ++i)
            if (!odd_[i]) p_map_[i] = remap(d.p_map[order[i]]);
        if (d.form) {
            if (d.form->rows() != n || d.form->cols() != n) throw SpecError("form has wrong size");
            form_ = Matrix(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) (*form_)(i, j) = field_->from_int((*d.form)(order[i], order[j]).v);
        }
        if (!d.weights.empty()) {
            if (d.weights.size() != n) throw SpecError("weights must be given for every basis element");
            weights_.resize(n);
            for (std::size_t i = 0; i < n; ++i) weights_[i] = d.weights[order[i]];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (block_[i] == Block::Toral) toral_.push_back(i);
            (odd_[i] ? odd_idx_ : even_idx_).push_back(i);
        }
        has_triangular_ = d.triangular.has_value();
    }

    const std::string& name() const { return name_; }
    std::uint32_t p() const { return field_->characteristic(); }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }

    std::size_t dim() const { return names_.size(); }
    std::size_t even_dim() const { return even_idx_.size(); }
    std::size_t odd_dim() const { return odd_idx_.size(); }
    const std::vector<std::size_t>& even_indices() const { return even_idx_; }
    const std::vector<std::size_t>& odd_indices() const { return odd_idx_; }
    const std::vector<std::size_t>& toral_indices() const { return toral_; }

    const std::string& basis_name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(const std::string& nm) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == nm) return i;
        return std::nullopt;
    }
    std::size_t index(const std::string& nm) const {
        auto i = index_of(nm);
        if (!i) throw SpecError("no basis element named " + nm + " in " + name_);
        return *i;
    }
    bool is_odd(std::size_t i) const { return odd_[i] != 0; }
    unsigned parity(std::size_t i) const { return odd_[i]; }
    Block block(std::size_t i) const { return block_[i]; }
    bool has_triangular() const { return has_triangular_; }
    bool basic_classical() const { return basic_classical_; }

    /// Original (user-order) index of global index i.
    std::size_t user_index(std::size_t i) const { return perm_[i]; }

    const Vec& bracket(std::size_t i, std::size_t j) const { return brackets_[i][j]; }
    const Vec& p_map(std::size_t i) const {
        if (odd_[i]) throw SpecError("p_map is only defined on even basis elements");
        return p_map_[i];
    }
    const std::optional<Matrix>& form() const { return form_; }
    const std::vector<std::vector<long long>>& weights() const { return weights_; }
    bool has_weights() const { return !weights_.empty(); }

    Vec unit(std::size_t i) const {
        Vec v(dim());
        v[i] = field_->one();
        return v;
    }

    /// Bilinear extension of the bracket to arbitrary coordinate vectors.
    Vec bracket(const Vec& x, const Vec& y) const {
        const Field& F = *field_;
        Vec out(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].v == 0) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].v == 0) continue;
                Elem c = F.mul(x[i], y[j]);
                const Vec& b = brackets_[i][j];
                for (std::size_t k = 0; k < dim(); ++k)
                    if (b[k].v) out[k] = F.add(out[k], F.mul(c, b[k]));
            }
        }
        return out;
    }

    /// ad x_i as a dim x dim matrix (column j = [x_i, x_j]).
    Matrix ad_matrix(std::size_t i) const { return ad_matrix(unit(i)); }
    Matrix ad_matrix(const Vec& x) const {
        Matrix m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            Vec c = bracket(x, unit(j));
            for (std::size_t k = 0; k < dim(); ++k) m(k, j) = c[k];
        }
        return m;
    }

    /// Parity of a vector, or nullopt if it mixes parities (zero counts as even).
    std::optional<unsigned> parity_of(const Vec& v) const {
        bool ev = false, od = false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (v[i].v) (odd_[i] ? od : ev) = true;
        if (ev && od) return std::nullopt;
        return od ? 1u : 0u;
    }

    std::string format_vec(const Vec& v) const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (v[i].v == 0) continue;
            long long c = field_->to_signed(v[i]);
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            long long a = c < 0 ? -c : c;
            if (a != 1) os << a << "*";
            os << names_[i];
        }
        return first ? "0" : os.str();
    }

    /// Integral root data read off the weights and triangular blocks.
    std::optional<RootDatum> root_datum() const {
        if (!has_triangular_ || weights_.empty()) return std::nullopt;
        RootDatum rd;
        for (std::size_t i = 0; i < dim(); ++i) {
            Root r{weights_[i], i, is_odd(i)};
            switch (block_[i]) {
                case Block::PosEven: rd.positive_even.push_back(r); break;
                case Block::PosOdd: rd.positive_odd.push_back(r); break;
                case Block::NegEven: rd.negative_even.push_back(r); break;
                case Block::NegOdd: rd.negative_odd.push_back(r); break;
                default: break;
            }
        }
        return rd;
    }

    /// Integer weight of basis element i (zero vector for toral elements).
    const std::vector<long long>& weight(std::size_t i) const { return weights_.at(i); }

    /// Same algebra, opposite Borel: negative and positive blocks swapped.
    /// `perm_out[i]` receives the index in *this of basis element i of the result.
    SuperAlgebra opposite(std::vector<std::size_t>* perm_out = nullptr) const {
        if (!has_triangular_) throw SpecError("opposite Borel requires triangular data");
        SuperAlgebraData d = to_data();
        Triangular t = *d_triangular();
        std::swap(t.neg_even, t.pos_even);
        std::swap(t.neg_odd, t.pos_odd);
        d.triangular = t;
        d.name = name_ + "^op";
        SuperAlgebra op(d);
        if (perm_out) {
            // to_data() keeps global order as the user order (evens first then odds)
            const auto user = data_order();
            perm_out->assign(dim(), 0);
            for (std::size_t i = 0; i < dim(); ++i) (*perm_out)[i] = user[op.user_index(i)];
        }
        return op;
    }

    /// Description in "user" form with evens first, then odds, each in global order.
    SuperAlgebraData to_data() const {
        SuperAlgebraData d;
        d.name = name_;
        d.p = p();
        d.basic_classical = basic_classical_;
        const auto order = data_order();  // data index -> global index
        const std::size_t n = dim();
        std::vector<std::size_t> inv(n);
        for (std::size_t k = 0; k < n; ++k) inv[order[k]] = k;
        for (auto g : order) (odd_[g] ? d.odd_names : d.even_names).push_back(names_[g]);
        auto remap = [&](const Vec& v) {
            Vec w(n);
            for (std::size_t g = 0; g < n; ++g) w[inv[g]] = v[g];
            return w;
        };
        d.brackets.assign(n, std::vector<Vec>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) d.brackets[a][b] = remap(brackets_[order[a]][order[b]]);
        for (std::size_t a = 0; a < even_dim(); ++a) d.p_map.push_back(remap(p_map_[order[a]]));
        d.triangular = d_triangular();
        if (form_) {
            Matrix f(n, n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) f(a, b) = (*form_)(order[a], order[b]);
            d.form = f;
        }
        if (!weights_.empty())
            for (auto g : order) d.weights.push_back(weights_[g]);
        return d;
    }

private:
    std::vector<std::size_t> data_order() const {
        std::vector<std::size_t> order;
        for (auto i : even_idx_) order.push_back(i);
        for (auto i : odd_idx_) order.push_back(i);
        return order;
    }

    std::optional<Triangular> d_triangular() const {
        if (!has_triangular_) return std::nullopt;
        const auto order = data_order();
        Triangular t;
        for (std::size_t k = 0; k < order.size(); ++k) {
            switch (block_[order[k]]) {
                case Block::NegEven: t.neg_even.push_back(k); break;
                case Block::NegOdd: t.neg_odd.push_back(k); break;
                case Block::Toral: t.toral.push_back(k); break;
                case Block::PosOdd: t.pos_odd.push_back(k); break;
                case Block::PosEven: t.pos_even.push_back(k); break;
                case Block::None: break;
            }
        }
        return t;
    }

    std::string name_;
    FieldPtr field_;
    std::vector<std::string> names_;
    std::vector<std::uint8_t> odd_;
    std::vector<Block> block_;
    std::vector<std::size_t> perm_;
    std::vector<std::vector<Vec>> brackets_;
    std::vector<Vec> p_map_;
    std::optional<Matrix> form_;
    std::vector<std::vector<long long>> weights_;
    std::vector<std::size_t> toral_, even_idx_, odd_idx_;
    bool has_triangular_ = false;
    bool basic_classical_ = false;
};

using AlgebraPtr = std::shared_ptr<const SuperAlgebra>;

// ---------------------------------------------------------------------------
// Matrix realizations

/// One basis element of a matrix realization.
struct RealizedElement {
    std::string name;
    Matrix matrix;
};

struct MatrixRealization {
    std::string name;
    std::uint32_t p = 0;
    /// Parity of row/column index of the ambient gl(m|n) (0 even, 1 odd).
    std::vector<unsigned> index_parity;
    std::vector<RealizedElement> even, odd;
    std::optional<Triangular> triangular;
    std::vector<std::vector<long long>> weights;
    bool basic_classical = false;
    bool with_supertrace_form = true;
};

namespace detail {

inline Matrix supercommutator(const Field& F, const Matrix& x, unsigned px, const Matrix& y, unsigned py) {
    Matrix xy = mat_mul(F, x, y), yx = mat_mul(F, y, x);
    return (px & py) ? mat_add(F, xy, yx) : mat_sub(F, xy, yx);
}

inline Elem supertrace(const Field& F, const Matrix& m, const std::vector<unsigned>& index_parity) {
    Elem s{0};
    for (std::size_t i = 0; i < m.rows(); ++i) s = index_parity[i] ? F.sub(s, m(i, i)) : F.add(s, m(i, i));
    return s;
}

}  // namespace detail

/// Structure constants and p-map from a faithful matrix realization.
inline SuperAlgebraData from_matrix_realization(const MatrixRealization& r) {
    auto Fp = Field::make(r.p, 1);
    const Field& F = *Fp;
    const std::size_t s = r.even.size(), t = r.odd.size(), n = s + t;
    std::vector<const RealizedElement*> all;
    for (auto& e : r.even) all.push_back(&e);
    for (auto& e : r.odd) all.push_back(&e);
    if (n == 0) throw SpecError("empty realization");
    const std::size_t N = all[0]->matrix.rows();
    for (auto* e : all)
        if (e->matrix.rows() != N || e->matrix.cols() != N) throw SpecError("realization matrices have inconsistent sizes");

    // columns = flattened basis matrices
    Matrix basis(N * N, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) basis(a * N + b, j) = F.from_int(all[j]->matrix(a, b).v);
    if (rank(F, basis) != n) throw SpecError("realization matrices are linearly dependent");
    auto coords = [&](const Matrix& m) -> std::optional<Vec> {
        Vec flat(N * N);
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) flat[a * N + b] = m(a, b);
        return solve(F, basis, flat);
    };

    SuperAlgebraData d;
    d.name = r.name;
    d.p = r.p;
    d.basic_classical = r.basic_classical;
    for (auto& e : r.even) d.even_names.push_back(e.name);
    for (auto& e : r.odd) d.odd_names.push_back(e.name);
    d.brackets.assign(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix c = detail::supercommutator(F, all[i]->matrix, i >= s, all[j]->matrix, j >= s);
            auto v = coords(c);
            if (!v) throw SpecError("supercommutator [" + all[i]->name + ", " + all[j]->name + "] leaves the span");
            d.brackets[i][j] = *v;
        }
    for (std::size_t i = 0; i < s; ++i) {
        Matrix pw = mat_pow(F, all[i]->matrix, r.p);
        auto v = coords(pw);
        if (!v) throw SpecError("p-th power of " + all[i]->name + " leaves the even span");
        d.p_map.push_back(*v);
    }
    d.triangular = r.triangular;
    d.weights = r.weights;
    if (r.with_supertrace_form) {
        Matrix f(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                f(i, j) = detail::supertrace(F, mat_mul(F, all[i]->matrix, all[j]->matrix), r.index_parity);
        d.form = f;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Builtins

namespace detail {

inline Matrix unit_matrix(std::size_t N, std::size_t a, std::size_t b, std::uint32_t c = 1) {
    Matrix m(N, N);
    m(a, b) = Elem{c};
    return m;
}

// Builder for realizations inside gl(N) with index parities and a
// characteristic-zero "epsilon" weight per index.
struct RealizationBuilder {
    std::size_t N;
    std::uint32_t p;
    std::vector<unsigned> parity;
    std::vector<std::vector<long long>> eps;  // weight of each ambient index

    struct Item {
        std::string name;
        Matrix m;
        std::size_t a, b;  // a representative matrix unit
        bool toral;
        std::vector<long long> diag;  // for toral elements
    };
    std::vector<Item> items;

    void add(std::string name, Matrix m, std::size_t a, std::size_t b) {
        items.push_back({std::move(name), std::move(m), a, b, false, {}});
    }
    void add_toral(std::string name, const std::vector<long long>& diag) {
        Matrix m(N, N);
        for (std::size_t i = 0; i < N; ++i) {
            long long v = diag[i] % static_cast<long long>(p);
            if (v < 0) v += p;
            m(i, i) = Elem{static_cast<std::uint32_t>(v)};
        }
        items.push_back({std::move(name), std::move(m), 0, 0, true, diag});
    }

    MatrixRealization build(std::string name, bool basic_classical) const {
        MatrixRealization r;
        r.name = std::move(name);
        r.p = p;
        r.index_parity = parity;
        r.basic_classical = basic_classical;
        std::vector<const Item*> toral;
        for (auto& it : items)
            if (it.toral) toral.push_back(&it);
        // positivity: first nonzero coordinate of eps[a] - eps[b]
        auto classify = [&](const Item& it) -> int {
            if (it.toral) return 0;
            for (std::size_t k = 0; k < eps[it.a].size(); ++k) {
                long long d = eps[it.a][k] - eps[it.b][k];
                if (d != 0) return d > 0 ? 1 : -1;
            }
            return 0;
        };
        Triangular tri;
        std::vector<const Item*> evens, odds;
        for (auto& it : items) (((parity[it.a] + parity[it.b]) & 1u) ? odds : evens).push_back(&it);
        std::vector<const Item*> ordered;
        for (auto* it : evens) ordered.push_back(it);
        for (auto* it : odds) ordered.push_back(it);
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            const Item& it = *ordered[i];
            const bool odd = i >= evens.size();
            const int c = classify(it);
            if (it.toral) tri.toral.push_back(i);
            else if (c > 0) (odd ? tri.pos_odd : tri.pos_even).push_back(i);
            else if (c < 0) (odd ? tri.neg_odd : tri.neg_even).push_back(i);
            else throw SpecError("zero-weight non-toral element in builtin");
            std::vector<long long> w;
            for (auto* h : toral) w.push_back(it.toral ? 0 : h->diag[it.a] - h->diag[it.b]);
            r.weights.push_back(std::move(w));
            (odd ? r.odd : r.even).push_back({it.name, it.m});
        }
        r.triangular = tri;
        return r;
    }
};

inline std::string idx_name(const std::string& stem, std::size_t i, std::size_t j) {
    return stem + std::to_string(i) + std::to_string(j);
}

}  // namespace detail

/// gl(m|n): elementary matrices E_ij (1-based names "E11", ...).
inline MatrixRealization gl_realization(std::size_t m, std::size_t n, std::uint32_t p) {
    const std::size_t N = m + n;
    detail::RealizationBuilder b{N, p, {}, {}, {}};
    for (std::size_t i = 0; i < N; ++i) {
        b.parity.push_back(i >= m ? 1u : 0u);
        std::vector<long long> e(N, 0);
        e[i] = 1;
        b.eps.push_back(e);
    }
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<long long> diag(N, 0);
        diag[i] = 1;
        b.add_toral(detail::idx_name("E", i + 1, i + 1), diag);
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) b.add(detail::idx_name("E", i + 1, j + 1), detail::unit_matrix(N, i, j), i, j);
    return b.build("gl(" + std::to_string(m) + "|" + std::to_string(n) + ")", true);
}

/// sl(m|n): off-diagonal units plus a supertrace-free diagonal basis.
inline MatrixRealization sl_realization(std::size_t m, std::size_t n, std::uint32_t p) {
    const std::size_t N = m + n;
    detail::RealizationBuilder b{N, p, {}, {}, {}};
    for (std::size_t i = 0; i < N; ++i) {
        b.parity.push_back(i >= m ? 1u : 0u);
        std::vector<long long> e(N, 0);
        e[i] = 1;
        b.eps.push_back(e);
    }
    for (std::size_t i = 0; i + 1 < N; ++i) {
        std::vector<long long> diag(N, 0);
        diag[i] = 1;
        // across the even/odd boundary the supertrace-free element is E_ii + E_{i+1,i+1}
        diag[i + 1] = (i + 1 == m) ? 1 : -1;
        b.add_toral("H" + std::to_string(i + 1), diag);
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) b.add(detail::idx_name("E", i + 1, j + 1), detail::unit_matrix(N, i, j), i, j);
    return b.build("sl(" + std::to_string(m) + "|" + std::to_string(n) + ")", true);
}

/// osp(1|2n) inside gl(1|2n): index 0 even, 1..2n odd, form diag(1) + J.
/// For n = 1 the basis is e, h, f, E, F with
///   e = E_12, h = E_11 - E_22, f = E_21, E = E_02 + E_10, F = E_01 - E_20.
inline MatrixRealization osp_realization(std::size_t n, std::uint32_t p) {
    const std::size_t N = 2 * n + 1;
    detail::RealizationBuilder b{N, p, {}, {}, {}};
    for (std::size_t i = 0; i < N; ++i) {
        b.parity.push_back(i == 0 ? 0u : 1u);
        std::vector<long long> e(n, 0);
        if (i >= 1 && i <= n) e[i - 1] = 1;
        if (i > n) e[i - n - 1] = -1;
        b.eps.push_back(e);
    }
    const std::uint32_t m1 = p - 1;
    auto mat2 = [&](std::size_t a, std::size_t bb, std::uint32_t c1, std::size_t c, std::size_t d, std::uint32_t c2) {
        Matrix m(N, N);
        m(a, bb) = Elem{c1};
        m(c, d) = Elem{c2};
        return m;
    };
    const bool rank_one = n == 1;
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<long long> diag(N, 0);
        diag[i] = 1;
        diag[n + i] = -1;
        b.add_toral(rank_one ? "h" : "h" + std::to_string(i), diag);
    }
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            if (i == j) continue;
            // E_ij - E_{n+j,n+i}
            b.add(detail::idx_name("a", i, j), mat2(i, j, 1, n + j, n + i, m1), i, j);
        }
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) {
            Matrix up = i == j ? detail::unit_matrix(N, i, n + i) : mat2(i, n + j, 1, j, n + i, 1);
            Matrix lo = i == j ? detail::unit_matrix(N, n + i, i) : mat2(n + i, j, 1, n + j, i, 1);
            b.add(rank_one ? "e" : detail::idx_name("b", i, j), up, i, n + j);
            b.add(rank_one ? "f" : detail::idx_name("c", i, j), lo, n + i, j);
        }
    for (std::size_t i = 1; i <= n; ++i) {
        // E_{0,n+i} + E_{i,0} and E_{0,i} - E_{n+i,0}
        b.add(rank_one ? "E" : "E" + std::to_string(i), mat2(0, n + i, 1, i, 0, 1), i, 0);
        b.add(rank_one ? "F" : "F" + std::to_string(i), mat2(0, i, 1, n + i, 0, m1), 0, i);
    }
    return b.build("osp(1|" + std::to_string(2 * n) + ")", true);
}

/// Builtin algebras by family name with the characteristic restrictions of
/// the basic classical table.  Supported: gl(m|n), sl(m|n) with p not
/// dividing m-n, osp(1|2n).
inline SuperAlgebra builtin(const std::string& family, std::size_t m, std::size_t n, std::uint32_t p) {
    if (p <= 2 || !detail::is_prime(p))
        throw SpecError("builtin algebras require an odd prime characteristic p > 2 (got " + std::to_string(p) + ")");
    if (family == "gl") {
        if (m + n == 0) throw SpecError("gl(0|0) is empty");
        return SuperAlgebra(from_matrix_realization(gl_realization(m, n, p)));
    }
    if (family == "sl") {
        const long long diff = static_cast<long long>(m) - static_cast<long long>(n);
        if (diff % static_cast<long long>(p) == 0)
            throw SpecError("sl(" + std::to_string(m) + "|" + std::to_string(n) + ") requires p > 2 and p not dividing m-n (basic classical table); p = " +
                            std::to_string(p) + " divides " + std::to_string(diff));
        if (m + n < 2) throw SpecError("sl(m|n) needs m+n >= 2");
        return SuperAlgebra(from_matrix_realization(sl_realization(m, n, p)));
    }
    if (family == "osp") {
        if (m != 1 || n == 0 || n % 2 != 0)
            throw SpecError("only osp(1|2n) is supported (got osp(" + std::to_string(m) + "|" + std::to_string(n) + "))");
        return SuperAlgebra(from_matrix_realization(osp_realization(n / 2, p)));
    }
    throw SpecError("unsupported builtin '" + family + "': supported families are gl(m|n), sl(m|n) with p not dividing m-n, osp(1|2n)");
}

inline AlgebraPtr make_builtin(const std::string& family, std::size_t m, std::size_t n, std::uint32_t p) {
    return std::make_shared<const SuperAlgebra>(builtin(family, m, n, p));
}

inline AlgebraPtr osp12(std::uint32_t p) { return make_builtin("osp", 1, 2, p); }

// ---------------------------------------------------------------------------
// Validation

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
    const CheckResult* find(const std::string& n) const {
        for (auto& c : checks)
            if (c.name == n) return &c;
        return nullptr;
    }
};

namespace detail {

inline Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.add(a[i], b[i]);
    return c;
}
inline Vec vec_sub(const Field& F, const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.sub(a[i], b[i]);
    return c;
}
inline Vec vec_scale(const Field& F, Elem s, const Vec& a) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.mul(s, a[i]);
    return c;
}

}  // namespace detail

inline ValidationReport validate(const SuperAlgebra& g) {
    const Field& F = g.field();
    const std::size_t n = g.dim();
    ValidationReport rep;
    auto nm = [&](std::size_t i) { return g.basis_name(i); };

    {
        CheckResult c{"parity_grading"};
        for (std::size_t i = 0; i < n && c.passed; ++i)
            for (std::size_t j = 0; j < n && c.passed; ++j) {
                auto par = g.parity_of(g.bracket(i, j));
                if (!par || (!is_zero_vec(g.bracket(i, j)) && *par != ((g.parity(i) + g.parity(j)) & 1u))) {
                    c.passed = false;
                    c.witness = "(" + nm(i) + ", " + nm(j) + ")";
                }
            }
        rep.checks.push_back(c);
    }
    {
        CheckResult c{"super_antisymmetry"};
        for (std::size_t i = 0; i < n && c.passed; ++i)
            for (std::size_t j = i; j < n && c.passed; ++j) {
                const bool both_odd = g.is_odd(i) && g.is_odd(j);
                Vec rhs = both_odd ? g.bracket(j, i) : detail::vec_scale(F, F.from_int(-1), g.bracket(j, i));
                if (g.bracket(i, j) != rhs) {
                    c.passed = false;
                    c.witness = "(" + nm(i) + ", " + nm(j) + ")";
                }
            }
        rep.checks.push_back(c);
    }
    {
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        CheckResult c{"super_jacobi"};
        for (std::size_t i = 0; i < n && c.passed; ++i)
            for (std::size_t j = 0; j < n && c.passed; ++j)
                for (std::size_t k = 0; k < n && c.passed; ++k) {
                    Vec lhs = g.bracket(g.unit(i), g.bracket(j, k));
                    Vec r1 = g.bracket(g.bracket(i, j), g.unit(k));
                    Vec r2 = g.bracket(g.unit(j), g.bracket(i, k));
                    if (g.is_odd(i) && g.is_odd(j)) r2 = detail::vec_scale(F, F.from_int(-1), r2);
                    if (lhs != detail::vec_add(F, r1, r2)) {
                        c.passed = false;
                        c.witness = "(" + nm(i) + ", " + nm(j) + ", " + nm(k) + ")";
                    }
                }
        rep.checks.push_back(c);
    }
    {
        CheckResult c{"restrictedness"};
        for (auto i : g.even_indices()) {
            Matrix lhs = mat_pow(F, g.ad_matrix(i), g.p());
            Matrix rhs = g.ad_matrix(g.p_map(i));
            if (!(lhs == rhs)) {
                c.passed = false;
                c.witness = "ad(" + nm(i) + "^[p]) != (ad " + nm(i) + ")^p, with " + nm(i) + "^[p] = " + g.format_vec(g.p_map(i));
                break;
            }
            auto par = g.parity_of(g.p_map(i));
            if (!par || *par != 0) {
                c.passed = false;
                c.witness = "p_map(" + nm(i) + ") is not even";
                break;
            }
        }
        rep.checks.push_back(c);
    }
    if (g.basic_classical()) {
        CheckResult c{"odd_dimension_even"};
        if (g.odd_dim() % 2 != 0) {
            c.passed = false;
            c.witness = "dim g_1 = " + std::to_string(g.odd_dim());
        }
        rep.checks.push_back(c);
    }
    if (g.has_triangular()) {
        CheckResult c{"triangular_grading"};
        auto sign = [&](std::size_t i) {
            switch (g.block(i)) {
                case Block::NegEven:
                case Block::NegOdd: return -1;
                case Block::PosEven:
                case Block::PosOdd: return 1;
                default: return 0;
            }
        };
        for (std::size_t i = 0; i < n && c.passed; ++i)
            for (std::size_t j = 0; j < n && c.passed; ++j) {
                const int si = sign(i), sj = sign(j);
                if (si == 0 || si != sj) continue;
                const Vec& b = g.bracket(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    if (b[k].v && sign(k) != si) {
                        c.passed = false;
                        c.witness = "(" + nm(i) + ", " + nm(j) + ")";
                        break;
                    }
            }
        rep.checks.push_back(c);

        CheckResult ab{"toral_abelian"};
        for (auto i : g.toral_indices())
            for (auto j : g.toral_indices())
                if (!is_zero_vec(g.bracket(i, j)) && ab.passed) {
                    ab.passed = false;
                    ab.witness = "(" + nm(i) + ", " + nm(j) + ")";
                }
        rep.checks.push_back(ab);

        CheckResult cl{"toral_pmap_closed"};
        for (auto i : g.toral_indices()) {
            const Vec& v = g.p_map(i);
            for (std::size_t k = 0; k < n; ++k)
                if (v[k].v && g.block(k) != Block::Toral && cl.passed) {
                    cl.passed = false;
                    cl.witness = nm(i);
                }
        }
        rep.checks.push_back(cl);
    }
    if (g.form()) {
        const Matrix& B = *g.form();
        CheckResult c{"form_invariance"};
        auto pair = [&](const Vec& x, const Vec& y) {
            Elem s{0};
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (x[a].v && y[b].v) s = F.add(s, F.mul(F.mul(x[a], y[b]), B(a, b)));
            return s;
        };
        for (std::size_t i = 0; i < n && c.passed; ++i)
            for (std::size_t j = 0; j < n && c.passed; ++j)
                for (std::size_t k = 0; k < n && c.passed; ++k)
                    if (pair(g.bracket(i, j), g.unit(k)) != pair(g.unit(i), g.bracket(j, k))) {
                        c.passed = false;
                        c.witness = "(" + nm(i) + ", " + nm(j) + ", " + nm(k) + ")";
                    }
        rep.checks.push_back(c);
        CheckResult nd{"form_nondegenerate"};
        if (rank(F, B) != n) {
            nd.passed = false;
            nd.witness = "rank " + std::to_string(rank(F, B));
        }
        rep.checks.push_back(nd);
    }
    if (auto rd = g.root_datum()) {
        CheckResult c{"root_spaces"};
        std::map<std::vector<long long>, std::size_t> count;
        for (std::size_t i = 0; i < n; ++i)
            if (g.block(i) != Block::Toral) ++count[g.weight(i)];
        for (auto& [w, k] : count)
            if (k != 1 && c.passed) {
                c.passed = false;
                c.witness = "root space of multiplicity " + std::to_string(k);
            }
        // ad-eigenvalues match the weights; [g_a, g_b] inside g_{a+b}
        for (std::size_t i = 0; i < n && c.passed; ++i) {
            for (std::size_t ti = 0; ti < g.toral_indices().size() && c.passed; ++ti) {
                const std::size_t h = g.toral_indices()[ti];
                Vec expect = detail::vec_scale(F, F.from_int(g.weight(i)[ti]), g.unit(i));
                if (g.bracket(h, i) != expect) {
                    c.passed = false;
                    c.witness = "[" + nm(h) + ", " + nm(i) + "] is not weight-consistent";
                }
            }
            for (std::size_t j = 0; j < n && c.passed; ++j) {
                std::vector<long long> sum(g.weight(i).size());
                for (std::size_t a = 0; a < sum.size(); ++a) sum[a] = g.weight(i)[a] + g.weight(j)[a];
                const Vec& b = g.bracket(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    if (b[k].v && g.weight(k) != sum) {
                        c.passed = false;
                        c.witness = "[" + nm(i) + ", " + nm(j) + "] leaves g_{a+b}";
                        break;
                    }
            }
        }
        rep.checks.push_back(c);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// rho and coroots

/// rho = 1/2 (sum of positive even roots - sum of positive odd roots), as
/// values on the toral basis in F_p.
inline Vec rho_weight(const SuperAlgebra& g) {
    auto rd = g.root_datum();
    if (!rd) throw SpecError("rho requires triangular data with root weights");
    const Field& F = g.field();
    const std::size_t r = g.toral_indices().size();
    std::vector<long long> twice(r, 0);
    for (auto& a : rd->positive_even)
        for (std::size_t k = 0; k < r; ++k) twice[k] += a.weight[k];
    for (auto& b : rd->positive_odd)
        for (std::size_t k = 0; k < r; ++k) twice[k] -= b.weight[k];
    Vec rho(r);
    const Elem half = F.inv(F.from_int(2));
    for (std::size_t k = 0; k < r; ++k) rho[k] = F.mul(half, F.from_int(twice[k]));
    return rho;
}

/// h_alpha in the toral span with (h_alpha, h) = alpha(h), as a full
/// coordinate vector.  Requires the form.
inline Vec coroot(const SuperAlgebra& g, const std::vector<long long>& alpha) {
    if (!g.form()) throw SpecError("coroot requires an invariant form");
    const Field& F = g.field();
    const auto& T = g.toral_indices();
    const std::size_t r = T.size();
    Matrix gram(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) gram(a, b) = (*g.form())(T[a], T[b]);
    Vec rhs(r);
    for (std::size_t k = 0; k < r; ++k) rhs[k] = F.from_int(alpha[k]);
    // sum_a c_a (h_a, h_k) = alpha(h_k)  ->  gram^T c = rhs
    auto c = solve(F, gram.transpose(), rhs);
    if (!c) throw SpecError("form is degenerate on the torus");
    Vec h(g.dim());
    for (std::size_t a = 0; a < r; ++a) h[T[a]] = (*c)[a];
    return h;
}

/// Checks [e_a, e_-a] = (e_a, e_-a) h_a and (e_a, e_-a) != 0 for every positive root.
inline CheckResult check_coroots(const SuperAlgebra& g) {
    CheckResult c{"coroots"};
    auto rd = g.root_datum();
    if (!rd || !g.form()) {
        c.passed = false;
        c.witness = "missing root datum or form";
        return c;
    }
    const Field& F = g.field();
    auto negative_of = [&](const std::vector<long long>& w) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < g.dim(); ++i) {
            if (g.block(i) == Block::Toral) continue;
            bool ok = true;
            for (std::size_t k = 0; k < w.size(); ++k)
                if (g.weight(i)[k] != -w[k]) ok = false;
            if (ok) return i;
        }
        return std::nullopt;
    };
    std::vector<Root> pos = rd->positive_even;
    pos.insert(pos.end(), rd->positive_odd.begin(), rd->positive_odd.end());
    for (auto& a : pos) {
        auto neg = negative_of(a.weight);
        if (!neg) {
            c.passed = false;
            c.witness = "no negative root vector for " + g.basis_name(a.vector);
            return c;
        }
        Elem pairing = (*g.form())(a.vector, *neg);
        if (pairing.v == 0) {
            c.passed = false;
            c.witness = "(" + g.basis_name(a.vector) + ", " + g.basis_name(*neg) + ") = 0";
            return c;
        }
        Vec h = coroot(g, a.weight);
        if (g.bracket(a.vector, *neg) != detail::vec_scale(F, pairing, h)) {
            c.passed = false;
            c.witness = "[" + g.basis_name(a.vector) + ", " + g.basis_name(*neg) + "] != (e,e') h_alpha";
            return c;
        }
    }
    return c;
}

}  // namespace superkern
