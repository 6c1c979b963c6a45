#include "invarank/bound.hpp"

#include <gtest/gtest.h>

using namespace invarank;

namespace {

const FieldSpec Q = FieldSpec::rationals();

RankOptions symbolic() {
    RankOptions o;
    o.strategy = RankStrategy::Symbolic;
    return o;
}

RankOptions random_eval(std::uint64_t seed, unsigned trials = default_trials) {
    RankOptions o;
    o.strategy = RankStrategy::RandomEval;
    o.seed = seed;
    o.trials = trials;
    return o;
}

}  // namespace

TEST(VectorField, Examples) {
    EXPECT_TRUE(vector_field(Matrix(Q, 3, 3)).apply(MultiPoly::variable(Q, 3, 0)).is_zero());
    // E12 on F^2: y d/dx
    auto f = vector_field(Matrix::unit(Q, 2, 0, 1));
    auto comps = f.components();
    EXPECT_EQ(comps[0], MultiPoly::variable(Q, 2, 1));
    EXPECT_TRUE(comps[1].is_zero());
    // Identity gives the Euler field: X(p) = deg(p) p for homogeneous p.
    auto euler = vector_field(Matrix::identity(Q, 3));
    auto x = MultiPoly::variable(Q, 3, 0), y = MultiPoly::variable(Q, 3, 1);
    auto p = x * x * y;
    EXPECT_EQ(euler.apply(p), p * Scalar::from_int(Q, 3));
    EXPECT_THROW(vector_field(Matrix(Q, 2, 3)), std::invalid_argument);
}

TEST(GroupDerivation, Examples) {
    EXPECT_TRUE(group_derivation(Matrix(Q, 2, 2)).is_zero());
    EXPECT_EQ(group_derivation(Matrix::identity(Q, 3)), Matrix::identity(Q, 9));
    // a = E12: D = x11 d/dx12 + x21 d/dx22 in the order x11, x12, x21, x22.
    Matrix expected(Q, 4, 4);
    expected(1, 0) = Scalar::one(Q);
    expected(3, 2) = Scalar::one(Q);
    EXPECT_EQ(group_derivation(Matrix::unit(Q, 2, 0, 1)), expected);
}

TEST(GroupDerivation, IsRightMultiplicationOnMatrixSpace) {
    // Right multiplication X -> X A on row-major coordinates is I (x) A^T, which
    // is left multiplication by A^T on the transposed coordinates.
    auto a = Matrix::from_ints(Q, {{1, -2}, {3, 5}});
    EXPECT_EQ(group_derivation(a), kronecker(Matrix::identity(Q, 2), a.transpose()));
    // Flow check at a concrete matrix: the coefficient vector at X equals vec(X A).
    Vector x{Scalar::from_int(Q, 2), Scalar::from_int(Q, 7), Scalar::from_int(Q, -1), Scalar::from_int(Q, 4)};
    Matrix xm = Matrix::from_ints(Q, {{2, 7}, {-1, 4}});
    EXPECT_EQ(group_derivation(a) * x, flatten(xm * a));
}

TEST(GenericRank, Sl2OnStandard) {
    auto fields = induced_fields(standard_basis(AlgebraKind::sl, 2, Q), parse_rep("V"));
    EXPECT_EQ(generic_rank(fields, symbolic()).r, 2u);
    auto rep = generic_rank(fields, random_eval(1));
    EXPECT_EQ(rep.r, 2u);
    ASSERT_TRUE(rep.failure_bound.has_value());
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2001, 5);  // samples from [-1000, 1000]
    EXPECT_EQ(*rep.failure_bound, mpq_class(mpz_class(32), denom));
}

TEST(GenericRank, Sl2OnVPlusSym2) {
    auto fields = induced_fields(squarezero_basis(AlgebraKind::sl, 2, Q), parse_rep("V + S2(V)"));
    auto rep = generic_rank(fields, symbolic());
    EXPECT_EQ(rep.r, 3u);
    EXPECT_EQ(rep.m, 3u);
    EXPECT_EQ(rep.N, 5u);
    EXPECT_FALSE(rep.failure_bound.has_value());
}

TEST(GenericRank, Sp6OnExt3) {
    auto fields = induced_fields(squarezero_basis(AlgebraKind::sp, 3, FieldSpec::prime(32003)), parse_rep("E3(V)"));
    auto rep = generic_rank(fields, random_eval(7));
    EXPECT_EQ(rep.N, 20u);
    EXPECT_EQ(rep.m, 21u);
    EXPECT_EQ(rep.r, 18u);
}

TEST(GenericRank, EulerFieldAlone) {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<LinearVectorField> f{vector_field(Matrix::identity(Q, n))};
        EXPECT_EQ(generic_rank(f, symbolic()).r, 1u);
        EXPECT_EQ(generic_rank(f, random_eval(3)).r, 1u);
    }
}

TEST(GenericRank, RandomNeverExceedsSymbolicAndGrowsWithTrials) {
    for (auto src : {"V", "V + S2(V)", "S2(V)", "V + S2(V)*", "V * V", "E2(V) + V"}) {
        for (auto kind : {AlgebraKind::gl, AlgebraKind::sl}) {
            auto fields = induced_fields(bound_basis(kind, 2, Q).first, parse_rep(src));
            auto sym = generic_rank(fields, symbolic()).r;
            std::size_t prev = 0;
            for (unsigned t = 1; t <= 4; ++t) {
                auto r = generic_rank(fields, random_eval(11, t)).r;
                EXPECT_LE(r, sym) << src;
                EXPECT_GE(r, prev) << src;
                prev = r;
            }
            // Every single evaluation is bounded by the generic rank.
            for (long a = -2; a <= 2; ++a) {
                Vector pt;
                for (std::size_t i = 0; i < fields[0].dim(); ++i) pt.push_back(Scalar::from_int(Q, a + long(i)));
                EXPECT_LE(mat_rank(detail::evaluate_fields(fields, pt)), sym);
            }
        }
    }
}

TEST(GenericRank, Errors) {
    EXPECT_THROW(generic_rank({}, symbolic()), std::invalid_argument);
    auto small = induced_fields(standard_basis(AlgebraKind::sl, 2, FieldSpec::prime(997)), parse_rep("V"));
    EXPECT_THROW(generic_rank(small, random_eval(1)), std::invalid_argument);
    EXPECT_NO_THROW(generic_rank(small, symbolic()));
    auto big = induced_fields(standard_basis(AlgebraKind::sl, 2, Q), parse_rep("S12(V)"));
    EXPECT_THROW(generic_rank(big, symbolic()), std::invalid_argument);
    auto opt = symbolic();
    opt.symbolic_max_n = 13;
    EXPECT_EQ(generic_rank(big, opt).r, 3u);
    auto zero_trials = random_eval(1, 0);
    EXPECT_THROW(generic_rank(small, zero_trials), std::invalid_argument);
}

TEST(InvariantBound, Examples) {
    auto ex3 = invariant_bound(AlgebraKind::sp, 3, parse_rep("E3(V)"), Q, random_eval(7));
    EXPECT_EQ(ex3.N, 20u);
    EXPECT_EQ(ex3.r, 18u);
    EXPECT_EQ(ex3.bound, 2u);
    EXPECT_TRUE(ex3.star_certified);
    auto ex2 = invariant_bound(AlgebraKind::sl, 2, parse_rep("V + S2(V)"), Q, symbolic());
    EXPECT_EQ(ex2.bound, 2u);
    auto ex1 = invariant_bound(AlgebraKind::gl, 2, parse_rep("V + S2(V)"), Q, symbolic());
    EXPECT_EQ(ex1.r, 4u);
    EXPECT_EQ(ex1.bound, 1u);
    EXPECT_FALSE(ex1.star_certified);
}

TEST(InvariantBound, DualInsensitive) {
    for (auto src : {"V + S2(V)", "S2(V)", "E2(V) + V", "V * V"})
        for (auto kind : {AlgebraKind::gl, AlgebraKind::sl, AlgebraKind::so}) {
            auto e = parse_rep(src);
            auto a = invariant_bound(kind, 3, e, Q, symbolic());
            auto b = invariant_bound(kind, 3, RepNode::dual(e), Q, symbolic());
            EXPECT_EQ(a.bound, b.bound) << src << " " << to_string(kind);
        }
}

TEST(InvariantBound, JsonKeys) {
    auto b = invariant_bound(AlgebraKind::sl, 2, parse_rep("V + S2(V)"), FieldSpec::prime(32003), random_eval(5));
    auto j = to_json(b);
    for (auto key : {"group", "n", "rep", "N", "m", "r", "bound", "strategy", "trials", "seed", "failure_bound",
                     "star_certified"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j.size(), 12u);
    EXPECT_EQ(j["rep"], "V + S2(V)");
    EXPECT_EQ(j["seed"], 5);
    EXPECT_LE(j["failure_bound"].get<double>(), 1e-10);
}
