#pragma once

// Invariant Einstein metrics, normalized to x1 = 1.
//
// The direct solver works on r1 = ... = rs and never touches the compactified
// field; fixed_points_to_metrics goes the other way, reading a metric off each
// equilibrium at infinity in chart U1. Agreement between the two is a check.

#include "ricciflow/catalog.hpp"
#include "ricciflow/curvature.hpp"
#include "ricciflow/dynamics.hpp"
#include "ricciflow/roots.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricciflow {

struct EinsteinMetric {
  InvariantMetric metric;
  double residual = 0.0;
  bool is_kahler = false;
  std::optional<std::vector<Rational>> exact;  // set when the solution is known in closed form
};

class EinsteinSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool near_kahler(std::span<const double> x) {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (std::fabs(x[k] - static_cast<double>(k + 1)) > 1e-8) return false;
  return true;
}

inline EinsteinMetric make_einstein(const FlagSpace& space, std::vector<double> x) {
  InvariantMetric g(std::move(x));
  const double res = einstein_residual(space, g);
  const bool kahler = near_kahler(g.x());
  return {std::move(g), res, kahler, std::nullopt};
}

}  // namespace detail

/// {(1,2), (1, 4 d2 / (d1 + 2 d2))}.
inline std::vector<EinsteinMetric> solve_two_summand(const FlagSpace& space) {
  if (space.s != 2) throw std::invalid_argument("solve_two_summand: '" + space.id + "' does not have two summands");
  const Rational d1 = space.d(1), d2 = space.d(2);
  const std::vector<std::vector<Rational>> exact{{Rational(1), Rational(2)}, {Rational(1), 4 * d2 / (d1 + 2 * d2)}};
  std::vector<EinsteinMetric> out;
  for (const auto& q : exact) {
    EinsteinMetric e = detail::make_einstein(space, {to_double(q[0]), to_double(q[1])});
    e.exact = q;
    out.push_back(std::move(e));
  }
  return out;
}

/// r1 - r2 and r2 - r3 at x1 = 1, multiplied through by the monomial that
/// clears their denominators; a polynomial system in (x2, x3).
inline PolyVectorField three_summand_system(const FlagSpace& space) {
  if (space.s != 3) throw std::invalid_argument("three_summand_system: '" + space.id + "' does not have three summands");
  const std::vector<Polynomial> x{Polynomial::constant(2, Rational(1)), Polynomial::variable(2, 0),
                                  Polynomial::variable(2, 1)};
  const std::vector<Polynomial> r = ricci_closed_form<Polynomial>(space, x);
  std::vector<Polynomial> eqs{r[0] - r[1], r[1] - r[2]};
  for (auto& e : eqs) e = e.shifted({-e.min_exponent(0), -e.min_exponent(1)});
  return PolyVectorField(std::move(eqs));
}

inline std::vector<EinsteinMetric> solve_three_summand(const FlagSpace& space, int grid_density = 64) {
  const PolyVectorField system = three_summand_system(space);
  RootSearchOptions opt;
  opt.grid_density = grid_density;
  const RootSearchResult roots = find_roots(system, SearchBox::cube(2, 1e-2, 10.0), opt);
  if (roots.roots.size() != 3) {
    std::ostringstream os;
    os << "solve_three_summand: expected 3 Einstein metrics on '" << space.id << "', found " << roots.roots.size();
    throw EinsteinSolveError(os.str());
  }
  std::vector<EinsteinMetric> out;
  for (const auto& root : roots.roots) {
    EinsteinMetric e = detail::make_einstein(space, {1.0, root.z[0], root.z[1]});
    if (e.residual > 1e-10) {
      std::ostringstream os;
      os << "solve_three_summand: root (" << root.z[0] << ", " << root.z[1] << ") on '" << space.id
         << "' has Einstein residual " << e.residual;
      throw EinsteinSolveError(os.str());
    }
    if (e.is_kahler) e.exact = std::vector<Rational>{Rational(1), Rational(2), Rational(3)};
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<EinsteinMetric> solve_einstein(const FlagSpace& space) {
  if (space.s == 2) return solve_two_summand(space);
  if (space.s == 3) return solve_three_summand(space);
  throw std::invalid_argument("solve_einstein: only s = 2 or 3 is supported");
}

struct FixedPointMetric {
  std::size_t record_index = 0;
  EinsteinMetric einstein;
};

struct FixedPointDiscrepancy {
  std::size_t record_index = 0;
  std::vector<double> z;
  std::string reason;
};

struct FixedPointMetrics {
  std::vector<FixedPointMetric> metrics;
  std::vector<FixedPointDiscrepancy> discrepancies;
  std::vector<std::size_t> skipped;  // equator points with a coordinate <= 1e-6
};

/// Metric (1, z) for each U1 boundary equilibrium. Points with a vanishing
/// coordinate are skipped; points that are not Einstein are reported.
inline FixedPointMetrics fixed_points_to_metrics(const FlagSpace& space, const std::vector<FixedPointRecord>& records) {
  FixedPointMetrics out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FixedPointRecord& rec = records[i];
    if (rec.chart != Chart::U1) throw std::invalid_argument("fixed_points_to_metrics: records must come from chart U1");
    if (rec.z.size() != static_cast<std::size_t>(space.s))
      throw std::invalid_argument("fixed_points_to_metrics: record dimension does not match '" + space.id + "'");
    std::vector<double> x{1.0};
    bool degenerate = false;
    for (std::size_t k = 0; k + 1 < rec.z.size(); ++k) {
      degenerate = degenerate || rec.z[k] <= 1e-6;
      x.push_back(rec.z[k]);
    }
    if (degenerate) {
      out.skipped.push_back(i);
      continue;
    }
    EinsteinMetric e = detail::make_einstein(space, std::move(x));
    if (e.residual > 1e-8) {
      std::ostringstream os;
      os << "Einstein residual " << e.residual << " exceeds 1e-8";
      out.discrepancies.push_back({i, rec.z, os.str()});
      continue;
    }
    out.metrics.push_back({i, std::move(e)});
  }
  return out;
}

/// Index into `candidates` of the metric within `tol` of `g` per coordinate.
inline std::optional<std::size_t> match_metric(const InvariantMetric& g, const std::vector<EinsteinMetric>& candidates,
                                               double tol = 1e-6) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i].metric;
    if (c.size() != g.size()) continue;
    bool close = true;
    for (std::size_t k = 0; k < g.size(); ++k) close = close && std::fabs(c[k] - g[k]) <= tol;
    if (close) return i;
  }
  return std::nullopt;
}

/// U1 equilibria at infinity of the scaled flow for `space`.
inline FixedPointSearch infinity_fixed_points(const FlagSpace& space, int grid_density = 64) {
  const CompactifiedField cf = compactify(scaled_polynomial_field(space), Chart::U1);
  return find_boundary_fixed_points(cf, default_boundary_box(static_cast<std::size_t>(space.s - 1)), grid_density);
}

}  // namespace ricciflow
