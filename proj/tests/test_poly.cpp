#include "invarank/matrix.hpp"
#include "invarank/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace invarank;

namespace {

const FieldSpec Q = FieldSpec::rationals();

MultiPoly mono(const FieldSpec& f, long c, Exponent e) {
    MultiPoly p(f, e.size());
    p.add_term(e, Scalar::from_int(f, c));
    return p;
}

MultiPoly random_poly(std::mt19937_64& gen, const FieldSpec& f, std::size_t nvars, int terms, unsigned maxdeg) {
    std::uniform_int_distribution<long> coef(-5, 5);
    std::uniform_int_distribution<unsigned> deg(0, maxdeg);
    MultiPoly p(f, nvars);
    for (int t = 0; t < terms; ++t) {
        Exponent e(nvars);
        for (auto& x : e) x = deg(gen);
        p.add_term(e, Scalar::from_int(f, coef(gen)));
    }
    return p;
}

Vector random_point(std::mt19937_64& gen, const FieldSpec& f, std::size_t n) {
    std::uniform_int_distribution<long> d(-7, 7);
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar::from_int(f, d(gen)));
    return v;
}

}  // namespace

TEST(PolyDiff, PowerRule) {
    // d/dx (x^2 y) = 2 x y
    EXPECT_EQ(poly_diff(mono(Q, 1, {2, 1}), 0), mono(Q, 2, {1, 1}));
    EXPECT_TRUE(poly_diff(mono(Q, 4, {0, 3}), 0).is_zero());
    EXPECT_THROW(poly_diff(mono(Q, 1, {1, 1}), 2), std::out_of_range);
}

TEST(PolyDiff, CharacteristicAnnihilates) {
    const auto f2 = FieldSpec::prime(2);
    EXPECT_TRUE(poly_diff(mono(f2, 1, {2}), 0).is_zero());
    const auto f3 = FieldSpec::prime(3);
    EXPECT_TRUE(poly_diff(mono(f3, 1, {3, 1}), 0).is_zero());
    EXPECT_EQ(poly_diff(mono(f3, 1, {4, 1}), 0), mono(f3, 1, {3, 1}));
}

TEST(PolyDiff, LinearityAndProductRule) {
    std::mt19937_64 gen(8);
    for (const auto& f : {Q, FieldSpec::prime(7), FieldSpec::prime(2)}) {
        for (int trial = 0; trial < 50; ++trial) {
            auto a = random_poly(gen, f, 3, 5, 3), b = random_poly(gen, f, 3, 5, 3);
            for (std::size_t v = 0; v < 3; ++v) {
                ASSERT_EQ((a + b).diff(v), a.diff(v) + b.diff(v));
                ASSERT_EQ((a * b).diff(v), a * b.diff(v) + b * a.diff(v));
            }
        }
    }
}

TEST(PolyEval, Examples) {
    Vector pt{Scalar::from_int(Q, 3), Scalar::from_int(Q, 2)};
    EXPECT_EQ(poly_eval(MultiPoly::constant(Q, 2, Scalar::from_int(Q, 7)), pt), Scalar::from_int(Q, 7));
    auto p = mono(Q, 1, {2, 0}) - mono(Q, 1, {0, 1});  // x^2 - y
    EXPECT_EQ(poly_eval(p, pt), Scalar::from_int(Q, 7));
    // t^2 - z u at (z, t, u) = (1, 2, 3)
    auto d = mono(Q, 1, {0, 2, 0}) - mono(Q, 1, {1, 0, 1});
    EXPECT_EQ(poly_eval(d, {Scalar::from_int(Q, 1), Scalar::from_int(Q, 2), Scalar::from_int(Q, 3)}),
              Scalar::from_int(Q, 1));
    EXPECT_THROW(poly_eval(d, pt), std::invalid_argument);
}

TEST(PolyEval, IsRingHomomorphism) {
    std::mt19937_64 gen(21);
    for (const auto& f : {Q, FieldSpec::prime(32003)}) {
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_poly(gen, f, 4, 4, 3), b = random_poly(gen, f, 4, 4, 3);
            auto pt = random_point(gen, f, 4);
            ASSERT_EQ((a * b).eval(pt), a.eval(pt) * b.eval(pt));
            ASSERT_EQ((a + b).eval(pt), a.eval(pt) + b.eval(pt));
        }
    }
}

TEST(MultiPoly, NoZeroTermsStored) {
    auto p = mono(Q, 1, {1, 0}) + mono(Q, -1, {1, 0});
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(p.size(), 0u);
    EXPECT_THROW(p.add_term({1}, Scalar::one(Q)), std::invalid_argument);
}

TEST(MultiPoly, ExactDivisionInvertsMultiplication) {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_poly(gen, Q, 3, 4, 2), b = random_poly(gen, Q, 3, 4, 2);
        if (b.is_zero()) continue;
        ASSERT_EQ(divide_exact(a * b, b), a);
    }
    auto x = MultiPoly::variable(Q, 2, 0), y = MultiPoly::variable(Q, 2, 1);
    EXPECT_THROW(divide_exact(x, y), std::domain_error);
    EXPECT_THROW(divide_exact(x * x + y, x), std::domain_error);
}

TEST(MultiPoly, GrlexPrinting) {
    auto x = MultiPoly::variable(Q, 2, 0), y = MultiPoly::variable(Q, 2, 1);
    auto p = y - x * x * Scalar::from_int(Q, 2) + x * y;
    EXPECT_EQ(p.to_string({"x", "y"}), "-2*x^2 + x*y + y");
    EXPECT_EQ(MultiPoly(Q, 2).to_string(), "0");
}
