#pragma once

// Generic rank of the module spanned by linear vector fields, and the
// resulting upper bound on the number of algebraically independent
// invariants: dim(rep) - rank.

#include "invarank/lie.hpp"
#include "invarank/poly.hpp"
#include "invarank/rep.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace invarank {

/// The derivation sum_j (sum_k A[j][k] x_k) d/dx_j.
struct LinearVectorField {
    Matrix coeff;

    std::size_t dim() const { return coeff.rows(); }

    /// Coefficient polynomials, one per d/dx_j.
    std::vector<MultiPoly> components() const {
        std::vector<MultiPoly> out;
        for (std::size_t j = 0; j < dim(); ++j) out.push_back(MultiPoly::linear_form(coeff.field(), coeff.row(j)));
        return out;
    }

    /// X(p) = sum_j (A x)_j dp/dx_j.
    MultiPoly apply(const MultiPoly& p) const {
        if (p.nvars() != dim()) throw std::invalid_argument("vector field and polynomial dimensions differ");
        MultiPoly out(p.field(), p.nvars());
        auto comps = components();
        for (std::size_t j = 0; j < dim(); ++j)
            if (!comps[j].is_zero()) out += comps[j] * p.diff(j);
        return out;
    }
};

inline LinearVectorField vector_field(const Matrix& a_rep) {
    a_rep.require_square("vector_field");
    return {a_rep};
}

/// Coefficients of D_A = sum_{i,j,k} a_ik x_ji d/dx_jk on the n^2 matrix
/// coordinates ordered x_11, x_12, ..., x_nn. Row (j,k) holds the linear
/// form sum_i a_ik x_ji, i.e. the vector field X -> X A.
inline Matrix group_derivation(const Matrix& a) {
    a.require_square("group_derivation");
    const std::size_t n = a.rows();
    Matrix c(a.field(), n * n, n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) c(j * n + k, j * n + i) = a(i, k);
    return c;
}

enum class RankStrategy { RandomEval, Symbolic };

inline std::string to_string(RankStrategy s) { return s == RankStrategy::RandomEval ? "RandomEval" : "Symbolic"; }

inline RankStrategy parse_strategy(std::string_view s) {
    if (s == "random" || s == "RandomEval") return RankStrategy::RandomEval;
    if (s == "symbolic" || s == "Symbolic") return RankStrategy::Symbolic;
    throw std::invalid_argument("unknown strategy '" + std::string(s) + "' (expected random or symbolic)");
}

inline constexpr std::size_t default_symbolic_max_n = 12;
inline constexpr std::uint64_t default_prime = 32003;
inline constexpr unsigned default_trials = 5;

/// Size guard for the symbolic strategy; INVARANK_MAX_SYMBOLIC_N overrides it.
inline std::size_t symbolic_size_limit() {
    if (const char* env = std::getenv("INVARANK_MAX_SYMBOLIC_N")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return default_symbolic_max_n;
}

struct RankOptions {
    RankStrategy strategy = RankStrategy::RandomEval;
    unsigned trials = default_trials;
    std::uint64_t seed = 0;
    std::size_t symbolic_max_n = symbolic_size_limit();
};

struct RankReport {
    std::size_t m = 0;
    std::size_t N = 0;
    std::size_t r = 0;
    RankStrategy strategy = RankStrategy::RandomEval;
    unsigned trials = 0;
    FieldSpec field;
    std::optional<mpq_class> failure_bound;  // RandomEval only
};

namespace detail {

/// W(point): row i is (A_i point)^T.
inline Matrix evaluate_fields(const std::vector<LinearVectorField>& fields, const Vector& point) {
    std::vector<Vector> rows;
    for (const auto& f : fields) rows.push_back(f.coeff * point);
    return stack_rows(point.front().field(), rows);
}

/// Rank of a polynomial matrix over the rational function field, by
/// Bareiss elimination with exact polynomial division. Pivots are chosen
/// by smallest total degree, then fewest terms.
inline std::size_t symbolic_rank(std::vector<std::vector<MultiPoly>> a) {
    const std::size_t m = a.size();
    if (m == 0) return 0;
    const std::size_t n = a[0].size();
    const auto& f = a[0][0].field();
    const std::size_t nv = a[0][0].nvars();
    MultiPoly prev = MultiPoly::constant(f, nv, Scalar::one(f));
    std::size_t k = 0;
    for (; k < std::min(m, n); ++k) {
        std::size_t pr = m, pc = n;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j) {
                if (a[i][j].is_zero()) continue;
                if (pr == m || a[i][j].total_degree() < a[pr][pc].total_degree() ||
                    (a[i][j].total_degree() == a[pr][pc].total_degree() && a[i][j].size() < a[pr][pc].size())) {
                    pr = i;
                    pc = j;
                }
            }
        if (pr == m) break;
        std::swap(a[k], a[pr]);
        if (pc != k)
            for (auto& row : a) std::swap(row[k], row[pc]);
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = divide_exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = MultiPoly(f, nv);
        }
        prev = a[k][k];
    }
    return k;
}

}  // namespace detail

inline RankReport generic_rank(const std::vector<LinearVectorField>& fields, const RankOptions& opt) {
    if (fields.empty()) throw std::invalid_argument("generic_rank needs at least one vector field");
    const std::size_t N = fields.front().dim();
    const FieldSpec field = fields.front().coeff.field();
    for (const auto& f : fields) {
        if (f.dim() != N) throw std::invalid_argument("vector fields have different dimensions");
        if (f.coeff.field() != field) throw std::invalid_argument("vector fields over different fields");
    }
    RankReport rep;
    rep.m = fields.size();
    rep.N = N;
    rep.strategy = opt.strategy;
    rep.field = field;

    if (opt.strategy == RankStrategy::Symbolic) {
        if (N > opt.symbolic_max_n)
            throw std::invalid_argument("symbolic rank refused for N = " + std::to_string(N) + " > " +
                                        std::to_string(opt.symbolic_max_n) +
                                        " (raise INVARANK_MAX_SYMBOLIC_N to override)");
        std::vector<std::vector<MultiPoly>> w;
        for (const auto& f : fields) w.push_back(f.components());
        rep.r = detail::symbolic_rank(std::move(w));
        return rep;
    }

    if (opt.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (!field.is_rational() && field.p <= 1000)
        throw std::invalid_argument("random evaluation needs p > 1000, got " + std::to_string(field.p));
    constexpr long qbound = 1000;  // rational sample set [-1000, 1000]
    const mpz_class sample_size = field.is_rational() ? mpz_class(2 * qbound + 1) : mpz_class(field.p);

    // Each trial seeds its own generator from (seed, trial index).
    auto trial = [&](unsigned t) {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(t)};
        std::mt19937_64 gen(seq);
        Vector point;
        for (std::size_t i = 0; i < N; ++i) {
            if (field.is_rational()) {
                std::uniform_int_distribution<long> d(-qbound, qbound);
                point.push_back(Scalar::from_int(field, d(gen)));
            } else {
                std::uniform_int_distribution<std::uint64_t> d(0, field.p - 1);
                point.push_back(Scalar::from_int(field, static_cast<long>(d(gen))));
            }
        }
        return mat_rank(detail::evaluate_fields(fields, point));
    };
    std::vector<std::future<std::size_t>> jobs;
    for (unsigned t = 0; t < opt.trials; ++t) jobs.push_back(std::async(std::launch::async, trial, t));
    for (auto& j : jobs) rep.r = std::max(rep.r, j.get());
    rep.trials = opt.trials;

    mpq_class ratio(mpz_class(std::min(rep.m, N)), sample_size);
    ratio.canonicalize();
    mpq_class bound = 1;
    for (unsigned t = 0; t < opt.trials; ++t) bound *= ratio;
    rep.failure_bound = bound;
    return rep;
}

struct BoundReport {
    AlgebraKind group = AlgebraKind::gl;
    std::size_t n = 0;
    std::string rep;
    std::size_t N = 0;
    std::size_t m = 0;
    std::size_t r = 0;
    std::size_t bound = 0;
    RankStrategy strategy = RankStrategy::RandomEval;
    unsigned trials = 0;
    std::optional<std::uint64_t> seed;
    std::optional<mpq_class> failure_bound;
    bool star_certified = false;
    FieldSpec field;
};

/// The basis used for a bound: square-zero when one exists, otherwise the
/// standard basis (not certified).
inline std::pair<LieBasis, bool> bound_basis(AlgebraKind kind, std::size_t n, const FieldSpec& field) {
    if (kind == AlgebraKind::gl || kind == AlgebraKind::so) return {standard_basis(kind, n, field), false};
    return {squarezero_basis(kind, n, field), true};
}

inline std::vector<LinearVectorField> induced_fields(const LieBasis& basis, const RepExpr& expr) {
    std::vector<LinearVectorField> fields;
    for (const auto& b : basis.elements) fields.push_back(vector_field(induced_derivative_action(expr, b)));
    return fields;
}

inline BoundReport invariant_bound(AlgebraKind kind, std::size_t n, const RepExpr& expr, const FieldSpec& field,
                                   const RankOptions& opt) {
    auto [basis, certified] = bound_basis(kind, n, field);
    auto rank = generic_rank(induced_fields(basis, expr), opt);
    BoundReport b;
    b.group = kind;
    b.n = n;
    b.rep = rep_to_string(expr);
    b.N = rank.N;
    b.m = rank.m;
    b.r = rank.r;
    b.bound = rank.N - rank.r;
    b.strategy = rank.strategy;
    b.trials = rank.trials;
    if (opt.strategy == RankStrategy::RandomEval) b.seed = opt.seed;
    b.failure_bound = rank.failure_bound;
    b.star_certified = certified;
    b.field = field;
    return b;
}

inline nlohmann::json failure_bound_json(const std::optional<mpq_class>& fb) {
    if (!fb) return nullptr;
    return fb->get_d();
}

inline nlohmann::json to_json(const RankReport& r) {
    return {{"m", r.m},
            {"N", r.N},
            {"r", r.r},
            {"strategy", to_string(r.strategy)},
            {"trials", r.trials},
            {"field", r.field.to_string()},
            {"failure_bound", failure_bound_json(r.failure_bound)}};
}

inline nlohmann::json to_json(const BoundReport& b) {
    nlohmann::json seed = nullptr;
    if (b.seed) seed = *b.seed;
    return {{"group", to_string(b.group)},
            {"n", b.n},
            {"rep", b.rep},
            {"N", b.N},
            {"m", b.m},
            {"r", b.r},
            {"bound", b.bound},
            {"strategy", to_string(b.strategy)},
            {"trials", b.trials},
            {"seed", seed},
            {"failure_bound", failure_bound_json(b.failure_bound)},
            {"star_certified", b.star_certified}};
}

}  // namespace invarank
