#include "ricciflow/catalog.hpp"
#include "ricciflow/compactify.hpp"
#include "ricciflow/dynamics.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/linalg.hpp"
#include "ricciflow/roots.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace ricciflow;

using cd = std::complex<double>;

TEST(Classify, OneDimensional) {
  const std::vector<cd> pos{{3.0, 0.0}}, neg{{-3.0, 0.0}}, zero{{1e-12, 0.0}};
  EXPECT_EQ(classify(pos, 1.0), Classification::RepellingNode);
  EXPECT_EQ(classify(neg, 1.0), Classification::AttractingNode);
  EXPECT_EQ(classify(zero, 1.0), Classification::Degenerate);
}

TEST(Classify, TwoDimensional) {
  EXPECT_EQ(classify(std::vector<cd>{{1, 0}, {2, 0}}, 1.0), Classification::RepellingNode);
  EXPECT_EQ(classify(std::vector<cd>{{-1, 0}, {-2, 0}}, 1.0), Classification::AttractingNode);
  EXPECT_EQ(classify(std::vector<cd>{{-1, 0}, {2, 0}}, 1.0), Classification::Saddle);
  EXPECT_EQ(classify(std::vector<cd>{{1, 1}, {1, -1}}, 1.0), Classification::RepellingFocus);
  EXPECT_EQ(classify(std::vector<cd>{{-1, 1}, {-1, -1}}, 1.0), Classification::AttractingFocus);
  EXPECT_EQ(classify(std::vector<cd>{{0, 1}, {0, -1}}, 1.0), Classification::Center);
  EXPECT_EQ(classify(std::vector<cd>{{0, 0}, {1, 0}}, 1.0), Classification::Degenerate);
  // The threshold scales with the matrix.
  EXPECT_EQ(classify(std::vector<cd>{{1e-3, 0}, {-1, 0}}, 1.0), Classification::Saddle);
  EXPECT_EQ(classify(std::vector<cd>{{1e-3, 0}, {-1, 0}}, 1e6), Classification::Degenerate);
  EXPECT_THROW(classify(std::vector<cd>{}, 1.0), std::invalid_argument);
}

TEST(Linalg, EigenvaluesSmallMatrices) {
  const auto e2 = eigenvalues(Matrix::from_rows({{0, -1}, {1, 0}}));
  EXPECT_NEAR(std::abs(e2[0].imag()), 1.0, 1e-15);
  EXPECT_NEAR(e2[0].real(), 0.0, 1e-15);
  const auto e3 = eigenvalues(Matrix::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}));
  double sum = 0.0, prod = 1.0;
  for (const auto& z : e3) {
    sum += z.real();
    prod *= z.real();
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
  }
  EXPECT_NEAR(sum, 9.0, 1e-12);
  EXPECT_NEAR(prod, 18.0, 1e-11);
  const auto rot = eigenvalues(Matrix::from_rows({{0, -2, 0}, {2, 0, 0}, {0, 0, -5}}));
  int complex_count = 0;
  for (const auto& z : rot) complex_count += std::fabs(z.imag()) > 1.0;
  EXPECT_EQ(complex_count, 2);
}

TEST(Linalg, SolveAndSingular) {
  const auto x = solve_linear(Matrix::from_rows({{2, 1}, {1, 3}}), {3, 5});
  EXPECT_NEAR(x[0], 0.8, 1e-15);
  EXPECT_NEAR(x[1], 1.4, 1e-15);
  EXPECT_THROW(solve_linear(Matrix::from_rows({{1, 2}, {2, 4}}), {1, 1}), SingularMatrix);
}

TEST(Dynamics, G2ShortFixedPointsAtInfinity) {
  const CompactifiedField cf = compactify(scaled_polynomial_field(find_space("G2/U(2)-short")), Chart::U1);
  const FixedPointSearch fps = find_boundary_fixed_points(cf, default_boundary_box(1));
  ASSERT_EQ(fps.points.size(), 2u);
  const auto& att = fps.points[0];
  const auto& rep = fps.points[1];
  EXPECT_NEAR(att.z[0], 2.0 / 3, 1e-12);
  EXPECT_NEAR(rep.z[0], 2.0, 1e-12);
  EXPECT_EQ(att.z[1], 0.0);
  EXPECT_EQ(rep.classification, Classification::RepellingNode);
  EXPECT_EQ(att.classification, Classification::AttractingNode);
  // Boundary derivative of 40 z (z-2)(3z-2) and transverse -P(1, z).
  EXPECT_NEAR(rep.boundary_eigenvalues[0].real(), 320.0, 1e-9);
  EXPECT_NEAR(rep.transverse_eigenvalue, -960.0, 1e-9);
  EXPECT_NEAR(att.boundary_eigenvalues[0].real(), -320.0 / 3, 1e-9);
  EXPECT_NEAR(att.transverse_eigenvalue, -3520.0 / 9, 1e-9);
  EXPECT_EQ(att.chart_eigenvalues.size(), 2u);
}

TEST(Dynamics, JacobianIsExact) {
  const PolyVectorField F = scaled_polynomial_field(find_space("G2/U(2)-short"));
  const Matrix J = jacobian(F, std::vector<double>{1, 2});
  // d/dx1 (32 x1^3 + 576 x1^2 x2 - 56 x1 x2^2) at (1,2) = 96 + 2304 - 224
  EXPECT_EQ(J(0, 0), 2176.0);
  EXPECT_EQ(J(0, 1), 576.0 - 224.0);
  EXPECT_EQ(J(1, 0), 384.0 * 2 + 256.0 * 4);
  EXPECT_EQ(J(1, 1), 192.0 + 1024.0 + 768.0);
  EXPECT_THROW(jacobian(F, std::vector<double>{1}), std::invalid_argument);
}

TEST(Dynamics, InvariantRayMeasure) {
  const PolyVectorField F = scaled_polynomial_field(find_space("G2/U(2)-short"));
  EXPECT_LE(verify_invariant_ray(F, std::vector<double>{0.5, 1.0}), 1e-12);
  EXPECT_THROW(verify_invariant_ray(F, std::vector<double>{1.0, -1.0}), std::invalid_argument);
}

TEST(Roots, FindsAllRootsOfSeparableSystem) {
  // (z1 - 1/2)(z1 - 3), (z2 - 2)
  const Polynomial a = Polynomial::variable(2, 0), b = Polynomial::variable(2, 1);
  const Polynomial half = Polynomial::constant(2, Rational(1, 2));
  const PolyVectorField sys({(a - half) * (a - Polynomial::constant(2, 3)), b - Polynomial::constant(2, 2)});
  const RootSearchResult r = find_roots(sys, SearchBox::cube(2, 0.01, 10.0));
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0].z[0], 0.5, 1e-13);
  EXPECT_NEAR(r.roots[1].z[0], 3.0, 1e-13);
  EXPECT_NEAR(r.roots[1].z[1], 2.0, 1e-13);
  EXPECT_GT(r.roots[0].seed_count, 1);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Roots, RejectsBadInput) {
  const PolyVectorField one({Polynomial::variable(1, 0)});
  EXPECT_THROW(find_roots(one, SearchBox::cube(2, 0.1, 1.0)), std::invalid_argument);
  EXPECT_THROW(find_roots(one, SearchBox::cube(1, 0.0, 1.0)), std::invalid_argument);
  EXPECT_THROW(find_roots(PolyVectorField({Polynomial(1)}), SearchBox::cube(1, 0.1, 1.0)), std::invalid_argument);
}

TEST(Integrate, ExponentialDecayAccurate) {
  auto rhs = [](std::span<const double> y) { return std::vector<double>{-y[0], -2.0 * y[1]}; };
  const Trajectory t = integrate(rhs, {1.0, 1.0}, 5.0);
  EXPECT_EQ(t.stop, StopReason::Completed);
  EXPECT_DOUBLE_EQ(t.times.back(), 5.0);
  EXPECT_NEAR(t.final_state()[0], std::exp(-5.0), 1e-10);
  EXPECT_NEAR(t.final_state()[1], std::exp(-10.0), 1e-11);
}

TEST(Integrate, StopsAtBlowUpAndCone) {
  auto grow = [](std::span<const double> y) { return std::vector<double>{y[0] * y[0]}; };
  IntegrationOptions opt;
  opt.blowup_norm = 1e6;
  EXPECT_EQ(integrate(grow, {1.0}, 2.0, opt).stop, StopReason::BlowUp);
  auto fall = [](std::span<const double>) { return std::vector<double>{-1.0}; };
  EXPECT_EQ(integrate(fall, {1.0}, 2.0).stop, StopReason::LeftPositiveCone);
  EXPECT_THROW(integrate(fall, {-1.0}, 2.0), std::invalid_argument);
  IntegrationOptions bad;
  bad.rel_tol = 0.0;
  EXPECT_THROW(integrate(fall, {1.0}, 1.0, bad), std::invalid_argument);
}

TEST(Integrate, FiniteTimeSingularityReportsUnderflow) {
  // y' = 1/(1 - t)^2 as an autonomous pair: blows up at t = 1 with a bounded state norm cap.
  auto rhs = [](std::span<const double> y) { return std::vector<double>{1.0, 1.0 / ((1.0 - y[0]) * (1.0 - y[0]))}; };
  IntegrationOptions opt;
  opt.require_positive = false;
  opt.blowup_norm = 1e300;
  const Trajectory t = integrate(rhs, {0.0, 1.0}, 2.0, opt);
  EXPECT_NE(t.stop, StopReason::Completed);
  EXPECT_LT(t.times.back(), 1.0);
}
