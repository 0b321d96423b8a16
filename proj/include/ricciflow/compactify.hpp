#pragma once

// Poincare compactification of polynomial fields in 2 and 3 variables.
//
// In chart U_k (k <= n) the original coordinates are
//     x_k = 1 / z_n,   x_j = z_m / z_n  (remaining indices in increasing order),
// and with d the degree of the field
//     z_i' = z_n^d ( -z_i P^k(x(z)) + P^{j_i}(x(z)) ),   i < n,
//     z_n' = -z_n^{d+1} P^k(x(z)).
// The factor 1/(Delta z)^{d-1} is a positive time rescale and is omitted.
// The affine chart (U3 in 2D, U4 in 3D) is the identity in 2D and
// z_n^{d+1} P(z) in 3D. Points at infinity have z_n = 0.

#include "ricciflow/vector_field.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ricciflow {

enum class Chart { U1 = 1, U2 = 2, U3 = 3, U4 = 4 };

inline std::string_view to_string(Chart c) {
  switch (c) {
    case Chart::U1: return "U1";
    case Chart::U2: return "U2";
    case Chart::U3: return "U3";
    case Chart::U4: return "U4";
  }
  return "?";
}

inline std::optional<Chart> parse_chart(std::string_view s) {
  if (s == "U1") return Chart::U1;
  if (s == "U2") return Chart::U2;
  if (s == "U3") return Chart::U3;
  if (s == "U4") return Chart::U4;
  return std::nullopt;
}

inline int chart_index(Chart c) { return static_cast<int>(c); }

inline bool is_affine_chart(Chart c, std::size_t n_vars) { return chart_index(c) == static_cast<int>(n_vars) + 1; }

/// A point in chart coordinates; the last coordinate is zero at infinity.
struct ChartPoint {
  Chart chart;
  std::vector<double> z;

  bool at_infinity() const { return !z.empty() && z.back() == 0.0; }
};

struct CompactifiedField {
  PolyVectorField source;
  Chart chart;
  PolyVectorField field;
  int d;
};

namespace detail {

inline CompactifiedField poincare(const PolyVectorField& source, Chart chart) {
  const std::size_t n = source.n_vars();
  if (source.size() != n) throw std::invalid_argument("poincare: field must have one component per variable");
  const int k = chart_index(chart);
  if (k < 1 || k > static_cast<int>(n) + 1)
    throw std::invalid_argument("poincare: chart " + std::string(to_string(chart)) + " does not exist in dimension " +
                                std::to_string(n));
  const int d = source.degree();

  if (k == static_cast<int>(n) + 1) {
    if (n == 2) return {source, chart, source, d};
    // Affine chart in 3D: z_n^{d+1} P(z).
    Exponents shift(n, 0);
    shift[n - 1] = d + 1;
    std::vector<Polynomial> comps;
    for (const auto& p : source.components()) comps.push_back(p.shifted(shift));
    return {source, chart, PolyVectorField(std::move(comps)), d};
  }

  const std::size_t kk = static_cast<std::size_t>(k - 1);
  const std::size_t last = n - 1;
  Exponents inv_last(n, 0);
  inv_last[last] = -1;
  // Images x_j(z).
  std::vector<Polynomial> images(n);
  std::vector<std::size_t> others;  // original indices j != k, in order
  for (std::size_t j = 0; j < n; ++j)
    if (j != kk) others.push_back(j);
  images[kk] = Polynomial::monomial(inv_last, Rational(1));
  for (std::size_t m = 0; m < others.size(); ++m) {
    Exponents e = inv_last;
    e[m] += 1;
    images[others[m]] = Polynomial::monomial(std::move(e), Rational(1));
  }
  std::vector<Polynomial> pulled;
  pulled.reserve(n);
  for (const auto& p : source.components()) pulled.push_back(p.compose(images));

  Exponents zd(n, 0);
  zd[last] = d;
  std::vector<Polynomial> comps;
  comps.reserve(n);
  for (std::size_t m = 0; m < others.size(); ++m) {
    const Polynomial zm = Polynomial::variable(n, m);
    comps.push_back((pulled[others[m]] - zm * pulled[kk]).shifted(zd));
  }
  Exponents zd1 = zd;
  zd1[last] += 1;
  comps.push_back((-pulled[kk]).shifted(zd1));
  for (const auto& c : comps)
    if (!c.is_polynomial()) throw std::logic_error("poincare: degree too small to clear the chart denominators");
  return {source, chart, PolyVectorField(std::move(comps)), d};
}

}  // namespace detail

inline CompactifiedField poincare_2d(const PolyVectorField& field, Chart chart) {
  if (field.n_vars() != 2) throw std::invalid_argument("poincare_2d: field must have 2 variables");
  return detail::poincare(field, chart);
}

inline CompactifiedField poincare_3d(const PolyVectorField& field, Chart chart) {
  if (field.n_vars() != 3) throw std::invalid_argument("poincare_3d: field must have 3 variables");
  return detail::poincare(field, chart);
}

inline CompactifiedField compactify(const PolyVectorField& field, Chart chart) {
  if (field.n_vars() == 2) return poincare_2d(field, chart);
  if (field.n_vars() == 3) return poincare_3d(field, chart);
  throw std::invalid_argument("compactify: only 2 or 3 variables are supported");
}

/// The equator z_n = 0 is invariant: the last component carries the factor z_n.
inline bool equator_invariant(const CompactifiedField& cf) {
  const std::size_t n = cf.field.n_vars();
  return cf.field[n - 1].divisible_by_variable(n - 1);
}

/// The system at infinity: set z_n = 0 and drop the last component.
inline PolyVectorField boundary_restriction(const CompactifiedField& cf) {
  const std::size_t n = cf.field.n_vars();
  if (is_affine_chart(cf.chart, n))
    throw std::invalid_argument("boundary_restriction: the affine chart " + std::string(to_string(cf.chart)) +
                                " contains no points at infinity");
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i + 1 < n; ++i) comps.push_back(cf.field[i].with_variable_zero(n - 1).without_variable(n - 1));
  return PolyVectorField(std::move(comps));
}

/// Metric coordinates -> chart U_k coordinates (requires x_k > 0).
inline std::vector<double> to_chart(Chart chart, std::span<const double> x) {
  const std::size_t n = x.size();
  const int k = chart_index(chart);
  if (k == static_cast<int>(n) + 1) return {x.begin(), x.end()};
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  if (kk >= n || x[kk] == 0.0) throw std::invalid_argument("to_chart: point is not in the chart domain");
  std::vector<double> z;
  for (std::size_t j = 0; j < n; ++j)
    if (j != kk) z.push_back(x[j] / x[kk]);
  z.push_back(1.0 / x[kk]);
  return z;
}

/// Chart U_k coordinates -> metric coordinates (requires z_n != 0).
inline std::vector<double> from_chart(Chart chart, std::span<const double> z) {
  const std::size_t n = z.size();
  const int k = chart_index(chart);
  if (k == static_cast<int>(n) + 1) return {z.begin(), z.end()};
  if (z.back() == 0.0) throw std::invalid_argument("from_chart: point at infinity has no finite preimage");
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  std::vector<double> x(n);
  x[kk] = 1.0 / z.back();
  std::size_t m = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != kk) x[j] = z[m++] / z.back();
  return x;
}

}  // namespace ricciflow
