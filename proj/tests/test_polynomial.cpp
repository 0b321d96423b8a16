#include "ricciflow/polynomial.hpp"
#include "ricciflow/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ricciflow;

namespace {

Polynomial X(std::size_t k) { return Polynomial::variable(2, k); }
Polynomial C(const Rational& c) { return Polynomial::constant(2, c); }

}  // namespace

TEST(Rational, ExactConversionOfBinaryDoubles) {
  EXPECT_EQ(exact_rational(0.5), Rational(1, 2));
  EXPECT_EQ(exact_rational(-3.0), Rational(-3));
  EXPECT_EQ(exact_rational(0.0), Rational(0));
  // 0.1 is not 1/10 in binary; the conversion must keep every bit.
  EXPECT_NE(exact_rational(0.1), Rational(1, 10));
  EXPECT_EQ(to_double(exact_rational(0.1)), 0.1);
  EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Polynomial, ArithmeticCancelsToZero) {
  const Polynomial p = X(0) * X(0) - X(1);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p + (-p), Polynomial(2));
  EXPECT_EQ((X(0) + X(1)) * (X(0) - X(1)), X(0) * X(0) - X(1) * X(1));
}

TEST(Polynomial, DegreeAndExponents) {
  const Polynomial p = C(3) * X(0) * X(0) * X(1) + X(1);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(p.max_exponent(0), 2);
  EXPECT_EQ(p.min_exponent(0), 0);
  EXPECT_EQ(p.coefficient({2, 1}), Rational(3));
  EXPECT_TRUE(p.divisible_by_variable(1));
  EXPECT_FALSE(p.divisible_by_variable(0));
  EXPECT_THROW(p.divided_by_variable(0), std::domain_error);
  EXPECT_EQ(p.divided_by_variable(1), C(3) * X(0) * X(0) + C(1));
}

TEST(Polynomial, LaurentShiftAndReciprocal) {
  const Polynomial inv = reciprocal(X(0));
  EXPECT_FALSE(inv.is_polynomial());
  EXPECT_EQ(inv.min_exponent(0), -1);
  EXPECT_EQ(inv * X(0), C(1));
  EXPECT_THROW(reciprocal(X(0) + X(1)), std::exception);
  EXPECT_EQ((X(1) * inv).shifted({1, 0}), X(1));
}

TEST(Polynomial, DerivativeMatchesHandComputation) {
  const Polynomial p = C(Rational(1, 2)) * pow(X(0), 3) * X(1) - C(4) * X(1) * X(1);
  EXPECT_EQ(p.derivative(0), C(Rational(3, 2)) * X(0) * X(0) * X(1));
  EXPECT_EQ(p.derivative(1), C(Rational(1, 2)) * pow(X(0), 3) - C(8) * X(1));
}

TEST(Polynomial, EvaluateExactly) {
  const Polynomial p = C(Rational(1, 3)) * X(0) * X(0) - X(1) + reciprocal(X(1));
  const std::vector<Rational> pt{Rational(3), Rational(1, 2)};
  EXPECT_EQ(p.evaluate(pt), Rational(3) - Rational(1, 2) + Rational(2));
}

TEST(Polynomial, ComposeWithMonomialImages) {
  // p(x, y) = x^2 y - y^3 under x -> 1/z2, y -> z1/z2, times z2^3.
  const Polynomial p = X(0) * X(0) * X(1) - pow(X(1), 3);
  const Polynomial z2inv = reciprocal(X(1));
  const Polynomial q = p.compose({z2inv, X(0) * z2inv}).shifted({0, 3});
  EXPECT_EQ(q, X(0) - pow(X(0), 3));
}

TEST(Polynomial, ZeroVariableAndRemoval) {
  const Polynomial p = X(0) * X(1) + C(2) * X(0) + C(5);
  const Polynomial q = p.with_variable_zero(1).without_variable(1);
  EXPECT_EQ(q.n_vars(), 1u);
  EXPECT_EQ(q, Polynomial::constant(1, 5) + Polynomial::constant(1, 2) * Polynomial::variable(1, 0));
  EXPECT_THROW(p.without_variable(1), std::domain_error);
}

TEST(Polynomial, MismatchedVariableCountsThrow) {
  EXPECT_THROW(X(0) + Polynomial::variable(3, 0), std::invalid_argument);
  EXPECT_THROW(Polynomial::variable(2, 2), std::out_of_range);
}

TEST(Polynomial, ToStringIsReadable) {
  const Polynomial p = C(2) * X(0) * X(0) - X(1) + C(Rational(1, 2));
  EXPECT_EQ(p.to_string({"a", "b"}), "2*a^2 - b + 1/2");
  EXPECT_EQ(Polynomial(2).to_string(), "0");
}

TEST(Polynomial, MaxAbsCoefficient) {
  EXPECT_EQ((C(-7) * X(0) + C(3)).max_abs_coefficient(), Rational(7));
}

TEST(NumericPolynomial, AgreesWithExactEvaluation) {
  const Polynomial p = C(Rational(7, 3)) * pow(X(0), 3) - C(11) * X(0) * X(1) * X(1) + C(2);
  const NumericPolynomial np(p, Rational(1));
  const std::vector<double> x{1.25, 0.75};
  const double exact = to_double(p.evaluate(std::vector<Rational>{exact_rational(1.25), exact_rational(0.75)}));
  EXPECT_NEAR(static_cast<double>(np.evaluate(x)), exact, 1e-15 * std::fabs(exact));
  const NumericPolynomial scaled(p, Rational(11));
  EXPECT_NEAR(static_cast<double>(scaled.evaluate(x)), exact / 11, 1e-15 * std::fabs(exact));
}
