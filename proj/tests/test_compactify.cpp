#include "ricciflow/catalog.hpp"
#include "ricciflow/compactify.hpp"
#include "ricciflow/flow.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <optional>

using namespace ricciflow;

namespace {

Polynomial Z(std::size_t n, std::size_t k) { return Polynomial::variable(n, k); }
Polynomial K(std::size_t n, const Rational& c) { return Polynomial::constant(n, c); }

/// c with a == c * b componentwise, if one exists.
std::optional<Rational> proportionality(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.size() != b.size() || b.components().front().is_zero()) return std::nullopt;
  const auto& [e, cb] = *b[0].terms().begin();
  const Rational c = a[0].coefficient(e) / cb;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k] * c)) return std::nullopt;
  return c;
}

// Printed per-space boundary systems of the three-summand spaces, in (z1, z2).
PolyVectorField printed_boundary(const std::string& id) {
  const Polynomial z1 = Z(2, 0), z2 = Z(2, 1);
  auto k = [](long long c) { return K(2, Rational(c)); };
  const Polynomial one = k(1);
  // A (-1 + z1^2) + B (2 + (-3 + z1) z1) z2 - C z2^2
  auto first = [&](long long lead, long long A, long long B, long long C) {
    return k(lead) * z1 * (k(A) * (z1 * z1 - one) + k(B) * (k(2) + (z1 - k(3)) * z1) * z2 - k(C) * z2 * z2);
  };
  // a + b z1 + c z1^2 + e (-6 + z1) z1 z2 + f z2^2
  auto second = [&](long long lead, long long a, long long b, long long c, long long e, long long f) {
    return k(lead) * z2 * (k(a) + k(b) * z1 + k(c) * z1 * z1 + k(e) * (z1 - k(6)) * z1 * z2 + k(f) * z2 * z2);
  };
  if (id == "G2/U(2)-long") {
    return PolyVectorField({k(10) * z1 * (k(288) * (z1 * z1 - one) + (k(512) - k(768) * z1 + k(256) * z1 * z1) * z2 - k(96) * z2 * z2),
                            second(640, -3, 12, 0, 2, 3)});
  }
  if (id == "E6/SU(3)xSU(3)xSU(2)xU(1)") {
    return PolyVectorField(
        {k(58) * z1 * (k(23328) * (z1 * z1 - one) + (k(124416) - k(186624) * z1 + k(62208) * z1 * z1) * z2 - k(7776) * z2 * z2),
         k(902016) * z2 * (k(-5) - k(4) * (z1 - k(3)) * z1 + k(2) * (z1 - k(6)) * z1 * z2 + k(5) * z2 * z2)});
  }
  if (id == "E7/SU(5)xSU(3)xU(1)") return PolyVectorField({first(4233600, 3, 7, 1), second(2116800, -17, 42, -13, 7, 17)});
  if (id == "E7/SU(6)xSU(2)xU(1)") return PolyVectorField({first(2030400, 3, 12, 1), second(4060800, -8, 18, -7, 3, 8)});
  if (id == "E8/E6xSU(2)xU(1)") return PolyVectorField({first(11617344, 3, 20, 1), second(23234688, -14, 30, -13, 5, 14)});
  if (id == "E8/SU(8)xU(1)") {
    return PolyVectorField({first(18464768, 9, 20, 3),
                            k(36929536) * z2 *
                                (k(-30) * z1 * (z2 - one) + z1 * z1 * (k(5) * z2 - k(9)) + k(12) * (z2 * z2 - one))});
  }
  if (id == "F4/SU(3)xSU(2)xU(1)") return PolyVectorField({first(138240, 3, 6, 1), second(138240, -7, 18, -5, 3, 7)});
  throw std::invalid_argument(id);
}

// The general boundary system with symbolic dimensions substituted.
PolyVectorField general_boundary(const FlagSpace& sp) {
  const Rational d1 = sp.d(1), d2 = sp.d(2), d3 = sp.d(3), n = sp.n;
  const Polynomial z1 = Z(2, 0), z2 = Z(2, 1), one = K(2, 1);
  auto k = [](const Rational& c) { return K(2, c); };
  const Polynomial a =
      k(n) * z1 *
      (k(2 * (d1 + d2) * (d1 + d2) * d3) * (z1 * z1 - one) +
       (k(8 * d1 * d2 * d2 - 4 * d1 * (d1 - 5 * d2) * d3) - k(2 * d1 * d2 * (d1 + 4 * d2 + 9 * d3)) * z1 +
        k((d1 + 2 * d2) * (-d2 * d3 + d1 * (d2 + 2 * d3))) * z1 * z1) *
           z2 +
       k(2 * (d2 * d2 - d1 * d1) * d3) * z2 * z2);
  const Polynomial inner =
      k(d2 * d3) * (z1 * z1 - one - z2) * (z2 - one) + k(d1 * d1) * (one + z1 * z1 + z1 * (z2 - one) - z2 * z2) +
      k(d1) * (k(d3) - k(d2) * (z2 - one) * (one + (z1 - k(4)) * z1 + z2) -
               k(d3) * (z1 * (k(9) + z1) + z1 * (k(2) * z1 - k(9)) * z2 + z2 * z2));
  const Polynomial b = k(-2 * d2 * n) * z2 * inner;
  return PolyVectorField({a, b});
}

}  // namespace

TEST(Compactify, TwoSummandChartU1MatchesPrintedSystem) {
  for (const auto& sp : sweep_spaces()) {
    if (sp.s != 2) continue;
    const CompactifiedField cf = compactify(scaled_polynomial_field(sp), Chart::U1);
    const Rational d1 = sp.d(1), d2 = sp.d(2);
    const Polynomial z1 = Z(2, 0), z2 = Z(2, 1);
    auto k = [](const Rational& c) { return K(2, c); };
    const Polynomial a = k(d1 + d2) * (z1 - k(2)) * z1 * (k(2 * d2) * (z1 - k(2)) + k(d1) * z1);
    const Polynomial b =
        (k(-4 * d1 * d1) * z1 + k(3 * d1 * d2) * (z1 - k(6)) * z1 + k(2 * d2 * d2) * (k(-4) + (z1 - k(4)) * z1)) * z2;
    EXPECT_EQ(cf.field, PolyVectorField({a, b})) << sp.id;
    EXPECT_EQ(cf.d, 3);
  }
}

TEST(Compactify, G2ShortBoundaryFrozen) {
  const CompactifiedField cf = compactify(scaled_polynomial_field(find_space("G2/U(2)-short")), Chart::U1);
  const Polynomial z = Polynomial::variable(1, 0);
  auto k = [](long long c) { return Polynomial::constant(1, c); };
  EXPECT_EQ(boundary_restriction(cf)[0], k(40) * z * (z - k(2)) * (k(3) * z - k(2)));
}

TEST(Compactify, TypeIBoundaryProportionalToPrintedSystems) {
  const std::map<std::string, Rational> factor = {
      {"E8/E6xSU(2)xU(1)", 4}, {"E8/SU(8)xU(1)", 16}, {"E7/SU(5)xSU(3)xU(1)", 8}, {"E7/SU(6)xSU(2)xU(1)", 4},
      {"E6/SU(3)xSU(3)xSU(2)xU(1)", 4}, {"F4/SU(3)xSU(2)xU(1)", 4}, {"G2/U(2)-long", 4},
  };
  for (const auto& sp : list_spaces(3)) {
    const PolyVectorField ours = boundary_restriction(compactify(scaled_polynomial_field(sp), Chart::U1));
    const auto c = proportionality(ours, printed_boundary(sp.id));
    ASSERT_TRUE(c.has_value()) << sp.id;
    EXPECT_EQ(*c, factor.at(sp.id)) << sp.id;
  }
}

TEST(Compactify, TypeIBoundaryProportionalToGeneralForm) {
  for (const auto& sp : list_spaces(3)) {
    const PolyVectorField ours = boundary_restriction(compactify(scaled_polynomial_field(sp), Chart::U1));
    const auto c = proportionality(ours, general_boundary(sp));
    ASSERT_TRUE(c.has_value()) << sp.id;
    EXPECT_GT(*c, 0) << sp.id;
  }
}

TEST(Compactify, RadialFieldFlowsTowardEquator) {
  // x' = x is radial; in every non-affine chart only z_n moves, with z_n' = -z_n P(1, z) = -z_n.
  for (std::size_t n : {2u, 3u}) {
    std::vector<Polynomial> comps;
    for (std::size_t k = 0; k < n; ++k) comps.push_back(Z(n, k));
    const PolyVectorField radial(comps);
    for (int c = 1; c <= static_cast<int>(n); ++c) {
      const CompactifiedField cf = compactify(radial, static_cast<Chart>(c));
      for (std::size_t k = 0; k + 1 < n; ++k) EXPECT_TRUE(cf.field[k].is_zero());
      EXPECT_EQ(cf.field[n - 1], -Z(n, n - 1)) << cf.field[n - 1].to_string();
    }
  }
}

TEST(Compactify, AffineCharts) {
  const PolyVectorField F2 = scaled_polynomial_field(find_space("G2/U(2)-short"));
  EXPECT_EQ(compactify(F2, Chart::U3).field, F2);
  EXPECT_THROW(boundary_restriction(compactify(F2, Chart::U3)), std::invalid_argument);
  EXPECT_THROW(compactify(F2, Chart::U4), std::invalid_argument);
  const PolyVectorField F3 = scaled_polynomial_field(find_space("G2/U(2)-long"));
  const CompactifiedField u4 = compactify(F3, Chart::U4);
  EXPECT_EQ(u4.field[0], F3[0].shifted({0, 0, 5}));
}

TEST(Compactify, ChartU2TwoSummands) {
  // In U2: x1 = z1/z2, x2 = 1/z2; z1' = z2^d (P - z1 Q), z2' = -z2^{d+1} Q.
  const PolyVectorField F = scaled_polynomial_field(find_space("G2/U(2)-short"));
  const CompactifiedField cf = compactify(F, Chart::U2);
  const Polynomial z1 = Z(2, 0);
  auto k = [](long long c) { return K(2, c); };
  const Polynomial P1 = k(32) * z1 * z1 * z1 + k(576) * z1 * z1 - k(56) * z1;
  const Polynomial Q1 = k(192) * z1 * z1 + k(256) * z1 + k(64);
  EXPECT_EQ(cf.field[0], P1 - z1 * Q1);
  EXPECT_EQ(cf.field[1], -Q1 * Z(2, 1));
}

TEST(Compactify, EquatorInvariantAndChartMapsRoundTrip) {
  for (const auto& sp : sweep_spaces()) {
    const PolyVectorField F = scaled_polynomial_field(sp);
    for (int c = 1; c <= sp.s; ++c) EXPECT_TRUE(equator_invariant(compactify(F, static_cast<Chart>(c)))) << sp.id;
  }
  const std::vector<double> x{0.5, 2.0, 4.0};
  for (Chart c : {Chart::U1, Chart::U2, Chart::U3, Chart::U4}) {
    const auto z = to_chart(c, x);
    const auto back = from_chart(c, z);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(back[k], x[k]);
  }
  EXPECT_EQ(to_chart(Chart::U1, x), (std::vector<double>{4.0, 8.0, 2.0}));
  EXPECT_THROW(from_chart(Chart::U1, std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

// A trajectory of the chart system is the image of a trajectory of the field
// up to a positive time change: the velocities are parallel.
TEST(Compactify, ChartFieldIsPushforwardUpToPositiveFactor) {
  const FlagSpace& sp = find_space("E7/SU(5)xSU(3)xU(1)");
  const PolyVectorField F = scaled_polynomial_field(sp);
  const std::vector<double> x{1.3, 0.7, 2.2};
  const auto v = F.evaluate(x);
  for (Chart c : {Chart::U1, Chart::U2, Chart::U3}) {
    const int kk = chart_index(c) - 1;
    const CompactifiedField cf = compactify(F, c);
    const auto z = to_chart(c, x);
    const auto w = cf.field.evaluate(z);
    // Differential of the chart map applied to v.
    std::vector<double> dz;
    for (int j = 0; j < 3; ++j)
      if (j != kk) dz.push_back((v[j] * x[kk] - x[j] * v[kk]) / (x[kk] * x[kk]));
    dz.push_back(-v[kk] / (x[kk] * x[kk]));
    const double ratio = w[0] / dz[0];
    EXPECT_GT(ratio, 0.0);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(w[i], ratio * dz[i], 1e-9 * std::fabs(w[i]) + 1e-9);
  }
}

TEST(Compactify, ParseChart) {
  EXPECT_EQ(parse_chart("U2"), Chart::U2);
  EXPECT_FALSE(parse_chart("U9").has_value());
  EXPECT_TRUE(is_affine_chart(Chart::U3, 2));
  EXPECT_FALSE(is_affine_chart(Chart::U3, 3));
}
