#pragma once

// Classical matrix Lie algebras, square-zero bases, the trace obstruction,
// and the characteristic-2 algebras L(f) of bilinear forms.

#include "invarank/matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invarank {

enum class AlgebraKind { gl, sl, so, sp, strict_upper };

inline std::string to_string(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::gl: return "gl";
        case AlgebraKind::sl: return "sl";
        case AlgebraKind::so: return "so";
        case AlgebraKind::sp: return "sp";
        case AlgebraKind::strict_upper: return "strict_upper";
    }
    return "?";
}

inline AlgebraKind parse_algebra_kind(std::string_view s) {
    if (s == "gl") return AlgebraKind::gl;
    if (s == "sl") return AlgebraKind::sl;
    if (s == "so") return AlgebraKind::so;
    if (s == "sp") return AlgebraKind::sp;
    if (s == "strict_upper" || s == "strict-upper" || s == "n") return AlgebraKind::strict_upper;
    throw std::invalid_argument("unknown algebra kind '" + std::string(s) +
                                "' (expected gl, sl, so, sp, strict_upper)");
}

/// Size of the matrices: 2n for sp, n otherwise.
inline std::size_t ambient_size(AlgebraKind kind, std::size_t n) { return kind == AlgebraKind::sp ? 2 * n : n; }

inline std::size_t algebra_dimension(AlgebraKind kind, std::size_t n) {
    switch (kind) {
        case AlgebraKind::gl: return n * n;
        case AlgebraKind::sl: return n * n - 1;
        case AlgebraKind::so:
        case AlgebraKind::strict_upper: return n * (n - 1) / 2;
        case AlgebraKind::sp: return 2 * n * n + n;
    }
    return 0;
}

struct LieBasis {
    AlgebraKind kind;
    std::size_t n;
    std::size_t ambient;
    FieldSpec field;
    std::vector<Matrix> elements;
    std::vector<std::string> labels;
};

struct StarReport {
    bool all_square_zero = false;
    bool inside_algebra = false;
    std::size_t span_rank = 0;
    std::size_t target_dim = 0;
    bool satisfied = false;
    std::vector<std::size_t> failing_indices;
};

struct LfReport {
    Matrix gram;
    std::size_t dimension = 0;
    std::vector<Matrix> basis;
    bool abelian = true;
};

namespace detail {

/// Builds a signed combination of matrix units, 1-based indices as in E(h,i).
class UnitCombo {
public:
    UnitCombo(const FieldSpec& f, std::size_t size) : m_(f, size, size) {}

    UnitCombo& plus(std::size_t h, std::size_t i) { return add(h, i, 1); }
    UnitCombo& minus(std::size_t h, std::size_t i) { return add(h, i, -1); }

    const Matrix& matrix() const { return m_; }
    const std::string& label() const { return label_; }

private:
    UnitCombo& add(std::size_t h, std::size_t i, long sign) {
        m_(h - 1, i - 1) += Scalar::from_int(m_.field(), sign);
        std::string u = "E(" + std::to_string(h) + "," + std::to_string(i) + ")";
        label_ += label_.empty() ? (sign < 0 ? "-" + u : u) : (sign < 0 ? "-" : "+") + u;
        return *this;
    }

    Matrix m_;
    std::string label_;
};

inline void push(LieBasis& b, const UnitCombo& c) {
    b.elements.push_back(c.matrix());
    b.labels.push_back(c.label());
}

inline void check_parameter(AlgebraKind kind, std::size_t n) {
    if (n < 1) throw std::invalid_argument("algebra parameter n must be at least 1");
    if (n < 2 && kind != AlgebraKind::gl && kind != AlgebraKind::sp)
        throw std::invalid_argument(to_string(kind) + " needs n >= 2");
}

/// The symplectic elements shared by the standard and square-zero lists:
/// off-diagonal blocks of the A, -A^T, B = B^T, C = C^T parametrisation.
inline void push_symplectic_offdiagonal(LieBasis& b) {
    const auto& f = b.field;
    const std::size_t n = b.n, s = b.ambient;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            push(b, UnitCombo(f, s).plus(i, j).minus(n + j, n + i));
            push(b, UnitCombo(f, s).plus(j, i).minus(n + i, n + j));
            push(b, UnitCombo(f, s).plus(i, n + j).plus(j, n + i));
            push(b, UnitCombo(f, s).plus(n + i, j).plus(n + j, i));
        }
}

}  // namespace detail

inline LieBasis standard_basis(AlgebraKind kind, std::size_t n, const FieldSpec& field) {
    detail::check_parameter(kind, n);
    LieBasis b{kind, n, ambient_size(kind, n), field, {}, {}};
    const std::size_t s = b.ambient;
    using detail::push;
    using detail::UnitCombo;
    switch (kind) {
        case AlgebraKind::gl:
            for (std::size_t h = 1; h <= n; ++h)
                for (std::size_t i = 1; i <= n; ++i) push(b, UnitCombo(field, s).plus(h, i));
            break;
        case AlgebraKind::sl:
            for (std::size_t h = 1; h <= n; ++h)
                for (std::size_t i = 1; i <= n; ++i)
                    if (h != i) push(b, UnitCombo(field, s).plus(h, i));
            for (std::size_t h = 2; h <= n; ++h) push(b, UnitCombo(field, s).plus(h, h).minus(1, 1));
            break;
        case AlgebraKind::so:
            for (std::size_t h = 1; h <= n; ++h)
                for (std::size_t i = h + 1; i <= n; ++i) push(b, UnitCombo(field, s).plus(h, i).minus(i, h));
            break;
        case AlgebraKind::strict_upper:
            for (std::size_t h = 1; h <= n; ++h)
                for (std::size_t i = h + 1; i <= n; ++i) push(b, UnitCombo(field, s).plus(h, i));
            break;
        case AlgebraKind::sp:
            for (std::size_t i = 1; i <= n; ++i) {
                push(b, UnitCombo(field, s).plus(i, n + i));
                push(b, UnitCombo(field, s).plus(n + i, i));
                push(b, UnitCombo(field, s).plus(i, i).minus(n + i, n + i));
            }
            detail::push_symplectic_offdiagonal(b);
            break;
    }
    return b;
}

/// A basis made of square-zero matrices. Only sl, sp and strict_upper have
/// one in general; gl never does and so has no uniform construction.
inline LieBasis squarezero_basis(AlgebraKind kind, std::size_t n, const FieldSpec& field) {
    if (kind == AlgebraKind::gl)
        throw std::invalid_argument("gl has no square-zero basis: square-zero matrices are traceless");
    if (kind == AlgebraKind::so)
        throw std::invalid_argument("so has no general square-zero basis construction");
    detail::check_parameter(kind, n);
    LieBasis b{kind, n, ambient_size(kind, n), field, {}, {}};
    const std::size_t s = b.ambient;
    using detail::push;
    using detail::UnitCombo;
    switch (kind) {
        case AlgebraKind::sl:
            for (std::size_t h = 1; h <= n; ++h)
                for (std::size_t i = 1; i <= n; ++i)
                    if (h != i) push(b, UnitCombo(field, s).plus(h, i));
            for (std::size_t h = 2; h <= n; ++h)
                push(b, UnitCombo(field, s).plus(h, h).minus(1, 1).minus(1, h).plus(h, 1));
            break;
        case AlgebraKind::sp:
            for (std::size_t i = 1; i <= n; ++i) {
                push(b, UnitCombo(field, s).plus(i, n + i));
                push(b, UnitCombo(field, s).plus(n + i, i));
                push(b, UnitCombo(field, s).plus(i, i).minus(n + i, n + i).plus(i, n + i).minus(n + i, i));
            }
            detail::push_symplectic_offdiagonal(b);
            break;
        case AlgebraKind::strict_upper: return standard_basis(kind, n, field);
        default: break;
    }
    return b;
}

inline bool is_square_zero(const Matrix& x) {
    x.require_square("is_square_zero");
    return (x * x).is_zero();
}

/// J = [[0, I], [-I, 0]] of size 2n.
inline Matrix symplectic_form(const FieldSpec& f, std::size_t n) {
    Matrix j(f, 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = Scalar::one(f);
        j(n + i, i) = -Scalar::one(f);
    }
    return j;
}

/// Membership of x in the algebra (kind, n) as a set of matrices.
inline bool in_algebra(const Matrix& x, AlgebraKind kind, std::size_t n) {
    const std::size_t s = ambient_size(kind, n);
    if (x.rows() != s || x.cols() != s) return false;
    switch (kind) {
        case AlgebraKind::gl: return true;
        case AlgebraKind::sl: return x.trace().is_zero();
        case AlgebraKind::so: {
            if (!(x.transpose() + x).is_zero()) return false;
            for (std::size_t i = 0; i < s; ++i)
                if (!x(i, i).is_zero()) return false;
            return true;
        }
        case AlgebraKind::sp: {
            Matrix j = symplectic_form(x.field(), n);
            return (x.transpose() * j + j * x).is_zero();
        }
        case AlgebraKind::strict_upper:
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t k = 0; k <= i; ++k)
                    if (!x(i, k).is_zero()) return false;
            return true;
    }
    return false;
}

/// Rank of the span of the given matrices, flattened to vectors.
inline std::size_t span_rank(const std::vector<Matrix>& elements) {
    if (elements.empty()) return 0;
    std::vector<Vector> rows;
    for (const auto& e : elements) rows.push_back(flatten(e));
    return mat_rank(stack_rows(elements.front().field(), rows));
}

inline StarReport verify_star(const LieBasis& basis, AlgebraKind kind, std::size_t n) {
    const std::size_t s = ambient_size(kind, n);
    StarReport rep;
    rep.target_dim = algebra_dimension(kind, n);
    rep.all_square_zero = true;
    rep.inside_algebra = true;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        const Matrix& x = basis.elements[i];
        if (x.rows() != s || x.cols() != s)
            throw std::invalid_argument("basis element " + std::to_string(i) + " has shape " + x.shape() +
                                        ", expected " + std::to_string(s) + "x" + std::to_string(s));
        bool sq = is_square_zero(x);
        bool in = in_algebra(x, kind, n);
        rep.all_square_zero = rep.all_square_zero && sq;
        rep.inside_algebra = rep.inside_algebra && in;
        if (!sq || !in) rep.failing_indices.push_back(i);
    }
    rep.span_rank = span_rank(basis.elements);
    rep.satisfied = rep.all_square_zero && rep.inside_algebra && rep.span_rank == rep.target_dim;
    return rep;
}

/// For skew x (char != 2): x^2 = 0 iff a maximal independent set of columns
/// spans a totally isotropic subspace of the standard dot product.
inline bool so_isotropy_test(const Matrix& x) {
    x.require_square("so_isotropy_test");
    if (x.field().characteristic() == 2) throw std::invalid_argument("so_isotropy_test needs characteristic != 2");
    if (!(x.transpose() + x).is_zero()) throw std::invalid_argument("so_isotropy_test needs a skew-symmetric matrix");
    auto cols = independent_columns(x);
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = a; b < cols.size(); ++b) {
            Scalar dot = Scalar::zero(x.field());
            for (std::size_t i = 0; i < x.rows(); ++i) dot += x(i, cols[a]) * x(i, cols[b]);
            if (!dot.is_zero()) return false;
        }
    return true;
}

/// True when the trace forbids writing I_n as a sum of square-zero matrices.
inline bool trace_obstruction(std::size_t n, const FieldSpec& field) {
    if (n < 1) throw std::invalid_argument("trace_obstruction needs n >= 1");
    auto p = field.characteristic();
    return p == 0 || n % p != 0;
}

/// Over GF(2) with n = 2m: the 3m square-zero matrices
/// (e*_{2i-1} + e*_{2i}) (x) (e_{2i-1} + e_{2i}), E(2i,2i-1), E(2i-1,2i),
/// whose sum is the identity.
inline std::vector<Matrix> identity_decomposition_char2(std::size_t n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("identity decomposition needs an even n >= 2");
    const auto f = FieldSpec::prime(2);
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t a = 2 * i, b = 2 * i + 1;
        Matrix block(f, n, n);
        for (auto r : {a, b})
            for (auto c : {a, b}) block(r, c) = Scalar::one(f);
        out.push_back(block);
        out.push_back(Matrix::unit(f, n, b, a));
        out.push_back(Matrix::unit(f, n, a, b));
    }
    return out;
}

inline bool is_abelian(const std::vector<Matrix>& elements) {
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (!commutator(elements[i], elements[j]).is_zero()) return false;
    return true;
}

/// L(f) = {X : X^T F = F X} for a Gram matrix F over GF(2).
inline LfReport lf_algebra(const Matrix& gram) {
    gram.require_square("lf_algebra");
    if (gram.field().characteristic() != 2) throw std::invalid_argument("lf_algebra needs a Gram matrix over GF(2)");
    const auto& f = gram.field();
    const std::size_t n = gram.rows();
    // Unknown X(c, d) is column c*n + d; equation (a, b) is row a*n + b.
    Matrix system(f, n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                system(a * n + b, c * n + a) += gram(c, b);
                system(a * n + b, c * n + b) -= gram(a, c);
            }
    LfReport rep{gram, 0, {}, true};
    for (const auto& k : kernel_basis(system)) {
        Matrix x(f, n, n);
        for (std::size_t i = 0; i < n * n; ++i) x(i / n, i % n) = k[i];
        rep.basis.push_back(std::move(x));
    }
    rep.dimension = rep.basis.size();
    rep.abelian = is_abelian(rep.basis);
    return rep;
}

/// Enumerates the GF(2)-span of the basis and reports whether its
/// square-zero elements span the whole algebra.
inline bool star_bruteforce_gf2(const LieBasis& basis) {
    const std::size_t d = basis.elements.size();
    if (d == 0) throw std::invalid_argument("empty basis");
    if (d > 20) throw std::invalid_argument("star_bruteforce_gf2 is limited to 20 basis elements");
    if (basis.field.characteristic() != 2) throw std::invalid_argument("star_bruteforce_gf2 needs GF(2)");
    std::vector<Matrix> square_zero;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << d); ++mask) {
        Matrix x(basis.field, basis.ambient, basis.ambient);
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (std::uint32_t{1} << i)) x += basis.elements[i];
        if (is_square_zero(x)) square_zero.push_back(std::move(x));
    }
    return span_rank(square_zero) == span_rank(basis.elements);
}

/// Single Jordan block: lambda on the diagonal, ones on the subdiagonal.
inline Matrix jordan_block(const FieldSpec& f, std::size_t m, long lambda = 0) {
    Matrix j(f, m, m);
    for (std::size_t i = 0; i < m; ++i) {
        j(i, i) = Scalar::from_int(f, lambda);
        if (i + 1 < m) j(i + 1, i) = Scalar::one(f);
    }
    return j;
}

/// [[0, upper_right], [lower_left, 0]] for equal-size square blocks.
inline Matrix antidiagonal_blocks(const Matrix& upper_right, const Matrix& lower_left) {
    const std::size_t m = upper_right.rows();
    Matrix g(upper_right.field(), 2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            g(i, m + j) = upper_right(i, j);
            g(m + i, j) = lower_left(i, j);
        }
    return g;
}

}  // namespace invarank
