#pragma once

// Dense matrices over an exact field: products, Kronecker/block
// constructions, rank (fraction-free over Q), kernels, inverses.

#include "invarank/field.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invarank {

using Vector = std::vector<Scalar>;

class Matrix {
public:
    Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    }

    static Matrix identity(const FieldSpec& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
        return m;
    }

    /// The matrix unit with a single 1 at (i, j), zero-based.
    static Matrix unit(const FieldSpec& field, std::size_t n, std::size_t i, std::size_t j) {
        Matrix m(field, n, n);
        m(i, j) = Scalar::one(field);
        return m;
    }

    static Matrix from_ints(const FieldSpec& field, const std::vector<std::vector<long>>& rows) {
        if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix");
        Matrix m(field, rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = Scalar::from_int(field, rows[i][j]);
        }
        return m;
    }

    static Matrix from_rows(const FieldSpec& field, const std::vector<Vector>& rows) {
        if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix");
        Matrix m(field, rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (rows[i][j].field() != field) throw std::invalid_argument("field mismatch");
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const {
        return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    Vector column(std::size_t j) const {
        Vector v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    /// Row-major entries.
    const std::vector<Scalar>& entries() const { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
    }

    Scalar trace() const {
        require_square("trace");
        Scalar t = Scalar::zero(field_);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const Scalar& s) {
        for (auto& e : data_) e *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) {
        for (auto& e : a.data_) e = -e;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.field_ != b.field_) throw std::invalid_argument("field mismatch in matrix product");
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("dimension mismatch in matrix product: " + a.shape() + " * " +
                                        b.shape());
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Vector operator*(const Vector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
        Vector out(rows_, Scalar::zero(field_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
        return out;
    }

    void require_square(const char* what) const {
        if (!is_square()) throw std::invalid_argument(std::string(what) + " needs a square matrix, got " + shape());
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (field_ != o.field_) throw std::invalid_argument("field mismatch");
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("shape mismatch: " + shape() + " vs " + o.shape());
    }

    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

inline Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("field mismatch in Kronecker product");
    Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return k;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("field mismatch in block sum");
    Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

/// Stacks the given vectors as rows.
inline Matrix stack_rows(const FieldSpec& field, const std::vector<Vector>& rows) {
    return Matrix::from_rows(field, rows);
}

/// Row-major flattening into a 1 x (rows*cols) vector.
inline Vector flatten(const Matrix& m) { return m.entries(); }

namespace detail {

/// Bareiss elimination on an integer matrix; returns the rank.
/// Rows and columns are permuted freely, which keeps every entry a minor
/// of the permuted input so the divisions stay exact.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
    const std::size_t m = a.size();
    if (m == 0) return 0;
    const std::size_t n = a[0].size();
    mpz_class prev = 1;
    std::size_t k = 0;
    for (; k < std::min(m, n); ++k) {
        std::size_t pr = m, pc = n;
        for (std::size_t j = k; j < n && pr == m; ++j)
            for (std::size_t i = k; i < m; ++i)
                if (sgn(a[i][j]) != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == m) break;
        std::swap(a[k], a[pr]);
        if (pc != k)
            for (auto& row : a) std::swap(row[k], row[pc]);
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return k;
}

/// Row echelon form in place by ordinary elimination; returns pivot columns.
inline std::vector<std::size_t> reduce_rows(Matrix& m, bool full_reduce) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Scalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = full_reduce ? 0 : r + 1; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Rank over the matrix's field. Over Q each row is scaled to integers and
/// reduced fraction-free; over GF(p) plain elimination is used.
inline std::size_t mat_rank(const Matrix& m) {
    if (m.field().is_rational()) {
        std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            mpz_class l = 1;
            for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).rational().get_den_mpz_t());
            for (std::size_t j = 0; j < m.cols(); ++j) {
                const mpq_class& q = m(i, j).rational();
                a[i][j] = q.get_num() * (l / q.get_den());
            }
        }
        return detail::bareiss_rank(std::move(a));
    }
    Matrix work = m;
    return detail::reduce_rows(work, false).size();
}

/// Basis of the right null space, one vector per free column of the
/// reduced row echelon form.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
    Matrix work = m;
    auto pivots = detail::reduce_rows(work, true);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), Scalar::zero(m.field()));
        v[free] = Scalar::one(m.field());
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Indices of a maximal linearly independent set of columns (leftmost greedy).
inline std::vector<std::size_t> independent_columns(const Matrix& m) {
    Matrix work = m;
    return detail::reduce_rows(work, false);
}

inline Scalar determinant(const Matrix& m) {
    m.require_square("determinant");
    Matrix a = m;
    const std::size_t n = a.rows();
    Scalar det = Scalar::one(m.field());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return Scalar::zero(m.field());
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        Scalar inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Scalar f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Inverse by Gauss-Jordan; std::nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
    m.require_square("inverse");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Scalar::one(m.field());
    }
    auto pivots = detail::reduce_rows(aug, true);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

}  // namespace invarank
