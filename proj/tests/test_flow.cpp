#include "ricciflow/catalog.hpp"
#include "ricciflow/dynamics.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/verification.hpp"

#include <gtest/gtest.h>

using namespace ricciflow;

namespace {

Polynomial X(std::size_t n, std::size_t k) { return Polynomial::variable(n, k); }
Polynomial C(std::size_t n, const Rational& c) { return Polynomial::constant(n, c); }

}  // namespace

TEST(Flow, VelocityAtEinsteinMetricsIsRadial) {
  const auto v = nrf_velocity(find_space("G2/U(2)-short"), InvariantMetric({1, 2}));
  EXPECT_DOUBLE_EQ(v[0], 1.5);
  EXPECT_DOUBLE_EQ(v[1], 3.0);
  const auto w = nrf_velocity_generic<Rational>(find_space("G2/U(2)-long"),
                                                std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  EXPECT_EQ(w, (std::vector<Rational>{Rational(5, 6), Rational(5, 3), Rational(5, 2)}));
}

TEST(Flow, VelocityOffEinstein) {
  const auto v = nrf_velocity_generic<Rational>(find_space("G2/U(2)-short"), std::vector<Rational>{Rational(3), Rational(1)});
  EXPECT_EQ(v, (std::vector<Rational>{Rational(49, 24), Rational(8, 9)}));
  const auto w = nrf_velocity_generic<Rational>(find_space("G2/U(2)-long"),
                                                std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
  EXPECT_EQ(w, (std::vector<Rational>{Rational(35, 24), Rational(4, 3), Rational(13, 8)}));
}

TEST(Flow, ScalingMonomial) {
  const ScalingMonomial mu2 = scaling_monomial(find_space("G2/U(2)-short"));
  EXPECT_EQ(mu2.coefficient, Rational(2 * 10 * 16));
  EXPECT_EQ(mu2.exponents, (Exponents{2, 1}));
  const ScalingMonomial mu3 = scaling_monomial(find_space("G2/U(2)-long"));
  EXPECT_EQ(mu3.coefficient, Rational(2 * 4 * 2 * 4 * 10 * 48));
  EXPECT_EQ(mu3.exponents, (Exponents{2, 1, 1}));
  EXPECT_DOUBLE_EQ(scaling_factor(find_space("G2/U(2)-short"), std::vector<double>{2, 3}), 320.0 * 12);
}

TEST(Flow, ScaledFieldTwoSummandsFrozen) {
  const PolyVectorField F = scaled_polynomial_field(find_space("G2/U(2)-short"));
  const Polynomial x = X(2, 0), y = X(2, 1);
  EXPECT_EQ(F[0], C(2, 32) * pow(x, 3) + C(2, 576) * x * x * y - C(2, 56) * x * y * y);
  EXPECT_EQ(F[1], C(2, 192) * x * x * y + C(2, 256) * x * y * y + C(2, 64) * pow(y, 3));
  EXPECT_EQ(F.evaluate(std::vector<double>{1, 2}), (std::vector<double>{960, 1920}));
  EXPECT_EQ(F.evaluate(std::vector<double>{3, 1}), (std::vector<double>{5880, 2560}));
}

TEST(Flow, ScaledFieldThreeSummandsFrozen) {
  const PolyVectorField F = scaled_polynomial_field(find_space("G2/U(2)-long"));
  EXPECT_EQ(F.degree(), 4);
  EXPECT_EQ(F.evaluate(std::vector<double>{1, 1, 1}), (std::vector<double>{44800, 40960, 49920}));
  EXPECT_EQ(F.evaluate(std::vector<double>{1, 2, 3}), (std::vector<double>{153600, 307200, 460800}));
  const Polynomial x = X(3, 0), y = X(3, 1), z = X(3, 2);
  const Polynomial first = C(3, 256) * (C(3, 9) * pow(x, 3) + C(3, 48) * x * x * y + C(3, 16) * x * x * z -
                                        C(3, 21) * x * y * y + C(3, 168) * x * y * z - C(3, 21) * x * z * z -
                                        C(3, 24) * y * y * z);
  EXPECT_EQ(F[0].divided_by_variable(0), first);
}

// The printed two-summand system equals mu * flow with component k divided by x_k.
TEST(Flow, PrintedTwoSummandSystemIsComponentwiseQuotient) {
  for (const auto& sp : list_spaces(2)) {
    const PolyVectorField F = scaled_polynomial_field(sp);
    const Rational d1 = sp.d(1), d2 = sp.d(2);
    const Polynomial x = X(2, 0), y = X(2, 1);
    const Polynomial p1 = C(2, 8 * d2 * d2) * x * x + C(2, 2 * (2 * d1 + d2) * (d1 + 4 * d2)) * x * y -
                          C(2, d2 * (3 * d1 + 2 * d2)) * y * y;
    const Polynomial p2 = (C(2, 4 * d2) * x + C(2, d1) * y) * (C(2, 4 * d2) * x + C(2, d1) * (C(2, 2) * x + y));
    EXPECT_EQ(F[0].divided_by_variable(0), p1) << sp.id;
    EXPECT_EQ(F[1].divided_by_variable(1), p2) << sp.id;
  }
}

TEST(Flow, ScaledFieldProperties) {
  for (const auto& sp : sweep_spaces()) {
    const PolyVectorField F = scaled_polynomial_field(sp);
    EXPECT_EQ(F.degree(), sp.s + 1) << sp.id;
    for (const auto& c : F.components()) {
      for (const auto& [e, coef] : c.terms()) {
        int deg = 0;
        for (int v : e) deg += v;
        EXPECT_EQ(deg, sp.s + 1) << sp.id << " is not homogeneous";
      }
    }
    EXPECT_TRUE(components_divisible(F)) << sp.id;
    EXPECT_LE(measure_scaled_proportionality(sp, F, 200), 1e-12) << sp.id;
    EXPECT_LE(measure_jacobian_fd(F, 10), 1e-6) << sp.id;
  }
}

TEST(Flow, EinsteinRaysAreInvariant) {
  const FlagSpace& sp = find_space("G2/U(2)-short");
  const PolyVectorField F = scaled_polynomial_field(sp);
  EXPECT_LE(verify_invariant_ray(F, std::vector<double>{1, 2}), 1e-12);
  EXPECT_LE(verify_invariant_ray(F, std::vector<double>{1, 2.0 / 3}), 1e-12);
  EXPECT_GT(verify_invariant_ray(F, std::vector<double>{1, 1}), 1e-3);
  const PolyVectorField G = scaled_polynomial_field(find_space("G2/U(2)-long"));
  EXPECT_LE(verify_invariant_ray(G, std::vector<double>{1, 2, 3}), 1e-12);
}

TEST(Flow, NoInteriorEquilibria) {
  for (const auto& sp : sweep_spaces()) EXPECT_GT(min_normalized_field_norm(scaled_polynomial_field(sp), 20), 0.0) << sp.id;
}

TEST(Flow, KahlerRayPreservedByIntegration) {
  const FlagSpace& sp = find_space("G2/U(2)-short");
  const Trajectory t = integrate_flow(sp, InvariantMetric({1, 2}), 50.0);
  EXPECT_EQ(t.stop, StopReason::Completed);
  for (const auto& x : t.states) EXPECT_NEAR(x[1] / x[0], 2.0, 1e-7);
  // The velocity is homogeneous of degree 0, so on the ray it is the constant (1.5, 3).
  EXPECT_NEAR(t.final_state()[0], 1.0 + 1.5 * 50.0, 1e-6);
}
