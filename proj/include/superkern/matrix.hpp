#pragma once

// Dense matrices over a finite field and the row-reduction kernels the rest
// of the library is built on.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "superkern/field.hpp"

namespace superkern {

using Vec = std::vector<Elem>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(const Field& F, std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
        return m;
    }

    static Matrix scalar(const Field& F, std::size_t n, Elem c) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        (void)F;
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length rows).
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    bool is_zero() const {
        for (auto x : data_)
            if (x.v != 0) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Stack b below this (equal column counts).
    Matrix vstack(const Matrix& b) const {
        if (rows_ == 0) return b;
        if (b.cols_ != cols_) throw std::invalid_argument("vstack: column mismatch");
        Matrix m(rows_ + b.rows_, cols_);
        std::copy(data_.begin(), data_.end(), m.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + data_.size());
        return m;
    }

    const std::vector<Elem>& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> data_;
};

inline Matrix mat_mul(const Field& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Elem x = a(i, k);
            if (x.v == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                Elem y = b(k, j);
                if (y.v != 0) c(i, j) = F.add(c(i, j), F.mul(x, y));
            }
        }
    return c;
}

inline Matrix mat_add(const Field& F, const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.add(a(i, j), b(i, j));
    return c;
}

inline Matrix mat_sub(const Field& F, const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.sub(a(i, j), b(i, j));
    return c;
}

inline Matrix mat_scale(const Field& F, Elem s, const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.mul(s, a(i, j));
    return c;
}

/// a += s * b in place.
inline void mat_axpy(const Field& F, Matrix& a, Elem s, const Matrix& b) {
    if (s.v == 0) return;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (b(i, j).v != 0) a(i, j) = F.add(a(i, j), F.mul(s, b(i, j)));
}

inline Matrix mat_pow(const Field& F, Matrix a, std::uint64_t e) {
    Matrix r = Matrix::identity(F, a.rows());
    while (e) {
        if (e & 1) r = mat_mul(F, r, a);
        e >>= 1;
        if (e) a = mat_mul(F, a, a);
    }
    return r;
}

inline Vec mat_vec(const Field& F, const Matrix& a, const Vec& v) {
    Vec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Elem s{0};
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j).v != 0 && v[j].v != 0) s = F.add(s, F.mul(a(i, j), v[j]));
        out[i] = s;
    }
    return out;
}

inline bool is_zero_vec(const Vec& v) {
    for (auto x : v)
        if (x.v != 0) return false;
    return true;
}

/// Reduced row echelon form, in place.  Returns the pivot column of each
/// nonzero row, in order.
inline std::vector<std::size_t> rref_in_place(const Field& F, Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).v == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        Elem inv = F.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            Elem f = m(i, c);
            if (f.v == 0) continue;
            Elem nf = F.neg(f);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(r, j).v != 0) m(i, j) = F.add(m(i, j), F.mul(nf, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(const Field& F, Matrix m) { return rref_in_place(F, m).size(); }

/// Basis of {x : M x = 0}.  Vectors are returned in the standard form with a
/// 1 in one free column each.
inline std::vector<Vec> kernel_basis(const Field& F, Matrix m) {
    const auto pivots = rref_in_place(F, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = F.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Row-reduced basis of the span of the given vectors (all of length n).
inline std::vector<Vec> span_basis(const Field& F, const std::vector<Vec>& vs, std::size_t n) {
    if (vs.empty()) return {};
    Matrix m = Matrix::from_rows(vs, n);
    auto piv = rref_in_place(F, m);
    std::vector<Vec> out;
    for (std::size_t r = 0; r < piv.size(); ++r) out.push_back(m.row(r));
    return out;
}

inline std::size_t span_rank(const Field& F, const std::vector<Vec>& vs, std::size_t n) {
    if (vs.empty()) return 0;
    return rank(F, Matrix::from_rows(vs, n));
}

/// Some x with A x = b, if one exists.
inline std::optional<Vec> solve(const Field& F, const Matrix& a, const Vec& b) {
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto piv = rref_in_place(F, aug);
    Vec x(a.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == a.cols()) return std::nullopt;
        x[piv[r]] = aug(r, a.cols());
    }
    return x;
}

inline std::optional<Matrix> inverse(const Field& F, const Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = F.one();
    }
    auto piv = rref_in_place(F, aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline Elem determinant(const Field& F, Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    Elem det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c).v == 0) ++piv;
        if (piv == n) return F.zero();
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, m(c, c));
        Elem inv = F.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            Elem f = F.mul(m(i, c), inv);
            if (f.v == 0) continue;
            Elem nf = F.neg(f);
            for (std::size_t j = c; j < n; ++j) m(i, j) = F.add(m(i, j), F.mul(nf, m(c, j)));
        }
    }
    return det;
}

/// Apply an embedding entrywise.
inline Matrix embed_matrix(const FieldEmbedding& emb, const Matrix& a) {
    Matrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = emb(a(i, j));
    return b;
}

}  // namespace superkern
