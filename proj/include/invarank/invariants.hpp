#pragma once

// Named invariants on V + S2(V) style spaces, exact infinitesimal and
// finite invariance checks, and the first-integral classifier for linear
// vector fields on the plane.

#include "invarank/bound.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace invarank {

struct RationalInvariant {
    std::string name;
    MultiPoly numerator;
    MultiPoly denominator;

    std::size_t nvars() const { return numerator.nvars(); }
};

enum class BuiltinInvariant { I1, I1dual, I2 };

inline BuiltinInvariant parse_builtin_invariant(std::string_view s) {
    if (s == "I1") return BuiltinInvariant::I1;
    if (s == "I1dual") return BuiltinInvariant::I1dual;
    if (s == "I2") return BuiltinInvariant::I2;
    throw std::invalid_argument("unknown invariant '" + std::string(s) + "' (expected I1, I1dual, I2)");
}

namespace detail {

/// Builds a polynomial in (x, y, z, t, u) from integer-coefficient monomials.
inline MultiPoly xyztu(const FieldSpec& f, const std::vector<std::pair<long, Exponent>>& terms) {
    MultiPoly p(f, 5);
    for (const auto& [c, e] : terms) p.add_term(e, Scalar::from_int(f, c));
    return p;
}

}  // namespace detail

/// Coordinates (x, y, z, t, u): v = x v1 + y v2 and the symmetric tensor
/// z v1(x)v1 + t (v1(x)v2 + v2(x)v1) + u v2(x)v2, i.e. the bases of
/// "V + S2(V)" (I1, I2) and "V + S2(V*)" (I1dual).
inline RationalInvariant builtin_invariant(BuiltinInvariant which, const FieldSpec& f = FieldSpec::rationals()) {
    using detail::xyztu;
    auto one = MultiPoly::constant(f, 5, Scalar::one(f));
    switch (which) {
        case BuiltinInvariant::I1:
            return {"I1",
                    xyztu(f, {{2, {1, 1, 0, 1, 0}}, {-1, {2, 0, 0, 0, 1}}, {-1, {0, 2, 1, 0, 0}}}),
                    xyztu(f, {{1, {0, 0, 0, 2, 0}}, {-1, {0, 0, 1, 0, 1}}})};
        case BuiltinInvariant::I1dual:
            return {"I1dual", xyztu(f, {{1, {2, 0, 1, 0, 0}}, {2, {1, 1, 0, 1, 0}}, {1, {0, 2, 0, 0, 1}}}), one};
        case BuiltinInvariant::I2: return {"I2", xyztu(f, {{1, {0, 0, 1, 0, 1}}, {-1, {0, 0, 0, 2, 0}}}), one};
    }
    throw std::logic_error("unknown builtin invariant");
}

/// X(P/Q) = 0, checked as X(P) Q - P X(Q) = 0.
inline bool annihilation_check(const LinearVectorField& field, const RationalInvariant& inv) {
    if (field.dim() != inv.nvars())
        throw std::invalid_argument("vector field on " + std::to_string(field.dim()) + " coordinates, invariant on " +
                                    std::to_string(inv.nvars()));
    const auto& p = inv.numerator;
    const auto& q = inv.denominator;
    return (field.apply(p) * q - p * field.apply(q)).is_zero();
}

namespace detail {

inline Scalar random_rational(std::mt19937_64& gen, const FieldSpec& f, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound), den(1, den_bound);
    return Scalar::from_rational(f, mpq_class(num(gen), den(gen)));
}

inline Vector random_point(std::mt19937_64& gen, const FieldSpec& f, std::size_t n) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(gen, f, 20, 5));
    return v;
}

/// P(g.v) Q(v) == P(v) Q(g.v) at random v; points where either denominator
/// vanishes are re-drawn, with a bounded number of retries.
inline bool invariant_at_random_points(const Matrix& rep_g, const RationalInvariant& inv, std::mt19937_64& gen,
                                       std::size_t points) {
    const auto& f = rep_g.field();
    for (std::size_t s = 0; s < points; ++s) {
        int retries = 0;
        while (true) {
            Vector v = random_point(gen, f, inv.nvars());
            Vector gv = rep_g * v;
            Scalar qv = inv.denominator.eval(v), qgv = inv.denominator.eval(gv);
            if (qv.is_zero() || qgv.is_zero()) {
                if (++retries > 100) throw std::runtime_error("could not sample away from the denominator's zeros");
                continue;
            }
            if (!(inv.numerator.eval(gv) * qv == inv.numerator.eval(v) * qgv)) return false;
            break;
        }
    }
    return true;
}

}  // namespace detail

/// Checks I(rho(g) v) == I(v) for one group element g of the ambient group.
inline bool invariance_under(const RepExpr& expr, const RationalInvariant& inv, const Matrix& g, std::size_t samples,
                             std::uint64_t seed) {
    Matrix rg = induced_group_action(expr, g);
    if (rg.rows() != inv.nvars()) throw std::invalid_argument("representation and invariant dimensions differ");
    std::mt19937_64 gen(seed);
    return detail::invariant_at_random_points(rg, inv, gen, samples);
}

/// Finite invariance under words of length <= 3 in the generators I + tB,
/// B square-zero, t random rational.
inline bool group_invariance_check(const RepExpr& expr, const RationalInvariant& inv, const LieBasis& basis,
                                   std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    if (basis.elements.empty()) throw std::invalid_argument("empty basis");
    for (std::size_t i = 0; i < basis.elements.size(); ++i)
        if (!is_square_zero(basis.elements[i]))
            throw std::invalid_argument("basis element " + basis.labels[i] + " is not square-zero");
    const auto& f = basis.field;
    const auto id = Matrix::identity(f, basis.ambient);
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pick(0, basis.elements.size() - 1), length(1, 3);
    for (std::size_t s = 0; s < samples; ++s) {
        Matrix g = id;
        for (std::size_t w = length(gen); w > 0; --w)
            g = g * (id + detail::random_rational(gen, f, 50, 20) * basis.elements[pick(gen)]);
        Matrix rg = induced_group_action(expr, g);
        if (rg.rows() != inv.nvars()) throw std::invalid_argument("representation and invariant dimensions differ");
        if (!detail::invariant_at_random_points(rg, inv, gen, 1)) return false;
    }
    return true;
}

enum class FirstIntegralKind { Rational, Polynomial, TranscendentalOnly };

inline std::string to_string(FirstIntegralKind k) {
    switch (k) {
        case FirstIntegralKind::Rational: return "Rational";
        case FirstIntegralKind::Polynomial: return "Polynomial";
        case FirstIntegralKind::TranscendentalOnly: return "TranscendentalOnly";
    }
    return "?";
}

struct FirstIntegralClass {
    FirstIntegralKind kind;
    std::string witness;
    std::string case_tag;
};

inline nlohmann::json to_json(const FirstIntegralClass& c) {
    return {{"class", to_string(c.kind)}, {"witness", c.witness}, {"case", c.case_tag}};
}

namespace detail {

/// Exact square root of a non-negative rational, if it has one.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    return mpq_class(a, b);
}

inline std::string linear_form_text(const mpq_class& cx, const mpq_class& cy) {
    auto part = [](const mpq_class& c, const char* var) -> std::string {
        if (c == 0) return "";
        if (c == 1) return var;
        if (c == -1) return std::string("-") + var;
        return c.get_str() + "*" + var;
    };
    std::string a = part(cx, "x"), b = part(cy, "y");
    if (a.empty()) return b;
    if (b.empty()) return a;
    return b[0] == '-' ? a + " - " + b.substr(1) : a + " + " + b;
}

}  // namespace detail

/// Classifies the first integrals of the linear field v -> A v on the
/// plane, for nonzero rational A, from trace, determinant and discriminant.
inline FirstIntegralClass classify_2x2(const Matrix& a) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("classify_2x2 needs a 2x2 matrix, got " + a.shape());
    if (!a.field().is_rational()) throw std::invalid_argument("classify_2x2 needs rational entries");
    if (a.is_zero()) throw std::invalid_argument("classify_2x2 needs a nonzero matrix");
    const mpq_class& p = a(0, 0).rational();
    const mpq_class& q = a(0, 1).rational();
    const mpq_class& r = a(1, 0).rational();
    const mpq_class& s = a(1, 1).rational();
    const mpq_class tr = p + s, det = p * s - q * r, disc = tr * tr - 4 * det;

    if (q == 0 && r == 0 && p == s)
        return {FirstIntegralKind::Rational, "y/x", "scalar: annihilator lambda - alpha"};

    if (det == 0) {
        // A linear form l with l A = 0 is constant along the flow.
        mpq_class lx = r, ly = -p;
        if (lx == 0 && ly == 0) {
            lx = s;
            ly = -q;
        }
        const mpq_class lead = lx != 0 ? lx : ly;  // monic in the first nonzero coordinate
        lx /= lead;
        ly /= lead;
        return {FirstIntegralKind::Polynomial, detail::linear_form_text(lx, ly), "singular: alpha*beta = 0"};
    }

    if (disc == 0) {
        mpq_class alpha = tr / 2;
        return {FirstIntegralKind::TranscendentalOnly,
                "x'*exp(-" + alpha.get_str() + "*y'/x') in Jordan coordinates (x', y')",
                "jordan: annihilator (lambda - alpha)^2"};
    }

    if (tr == 0)
        return {FirstIntegralKind::Rational, "x'*y' in eigen-coordinates, eigenvalue ratio -1",
                "distinct: rational eigenvalue ratio"};
    if (auto root = detail::rational_sqrt(disc)) {
        mpq_class alpha = (tr + *root) / 2, beta = (tr - *root) / 2;
        mpq_class ratio = beta / alpha;
        return {FirstIntegralKind::Rational,
                "x'^(" + beta.get_str() + ") * y'^(-" + alpha.get_str() + ") in eigen-coordinates, eigenvalue ratio " +
                    ratio.get_str(),
                "distinct: rational eigenvalue ratio"};
    }
    return {FirstIntegralKind::TranscendentalOnly, "", "distinct: irrational eigenvalue ratio"};
}

}  // namespace invarank
