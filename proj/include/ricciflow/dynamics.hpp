#pragma once

// Equilibria at infinity, their linearisation and stability type, invariant
// rays, and trajectories of the flow.
//
// Classification follows the boundary (equator) system: a zero of the
// restricted field is a node/saddle/focus according to the eigenvalues of the
// restricted Jacobian. The transverse eigenvalue (the z_n direction) and the
// eigenvalues of the full chart Jacobian are reported alongside.

#include "ricciflow/catalog.hpp"
#include "ricciflow/compactify.hpp"
#include "ricciflow/curvature.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/integrate.hpp"
#include "ricciflow/linalg.hpp"
#include "ricciflow/roots.hpp"
#include "ricciflow/vector_field.hpp"

#include <cmath>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace ricciflow {

enum class Classification { RepellingNode, AttractingNode, Saddle, RepellingFocus, AttractingFocus, Center, Degenerate };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::RepellingNode: return "RepellingNode";
    case Classification::AttractingNode: return "AttractingNode";
    case Classification::Saddle: return "Saddle";
    case Classification::RepellingFocus: return "RepellingFocus";
    case Classification::AttractingFocus: return "AttractingFocus";
    case Classification::Center: return "Center";
    case Classification::Degenerate: return "Degenerate";
  }
  return "?";
}

/// Stability type from eigenvalues. `scale` is the norm of the matrix the
/// eigenvalues came from; real parts within 1e-8 * scale of zero count as zero.
inline Classification classify(std::span<const std::complex<double>> eigs, double scale) {
  const double tau = 1e-8 * scale;
  if (eigs.empty() || eigs.size() > 2) throw std::invalid_argument("classify: expected one or two eigenvalues");
  if (eigs.size() == 1) {
    const double re = eigs[0].real();
    if (re > tau) return Classification::RepellingNode;
    if (re < -tau) return Classification::AttractingNode;
    return Classification::Degenerate;
  }
  const double r0 = eigs[0].real(), r1 = eigs[1].real();
  const bool oscillating = std::fabs(eigs[0].imag()) > tau || std::fabs(eigs[1].imag()) > tau;
  if (std::fabs(r0) <= tau || std::fabs(r1) <= tau) {
    if (std::fabs(r0) <= tau && std::fabs(r1) <= tau && oscillating) return Classification::Center;
    return Classification::Degenerate;
  }
  if (r0 > 0 && r1 > 0) return oscillating ? Classification::RepellingFocus : Classification::RepellingNode;
  if (r0 < 0 && r1 < 0) return oscillating ? Classification::AttractingFocus : Classification::AttractingNode;
  return Classification::Saddle;
}

/// Exact partial derivatives evaluated at `point`.
inline Matrix jacobian(const PolyVectorField& field, std::span<const double> point) {
  if (field.size() != field.n_vars()) throw std::invalid_argument("jacobian: field must be square");
  if (point.size() != field.n_vars()) throw std::invalid_argument("jacobian: point dimension mismatch");
  std::vector<Rational> q;
  for (double v : point) q.push_back(exact_rational(v));
  const auto J = field.jacobian_polynomials();
  Matrix m(field.n_vars());
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = 0; j < J[i].size(); ++j) m(i, j) = to_double(J[i][j].evaluate(q));
  return m;
}

struct FixedPointRecord {
  Chart chart = Chart::U1;
  std::vector<double> z;  // full chart coordinates; z.back() == 0 at infinity
  double residual = 0.0;
  Matrix jacobian;  // full chart Jacobian
  std::vector<std::complex<double>> boundary_eigenvalues;
  double transverse_eigenvalue = 0.0;
  std::vector<std::complex<double>> chart_eigenvalues;
  Classification classification = Classification::Degenerate;
  int seed_count = 0;
};

struct FixedPointSearch {
  std::vector<FixedPointRecord> points;
  std::vector<RootWarning> warnings;
};

/// [0.01, 10]^dim, the default search region for equilibria at infinity.
inline SearchBox default_boundary_box(std::size_t dim) { return SearchBox::cube(dim, 1e-2, 10.0); }

inline FixedPointSearch find_boundary_fixed_points(const CompactifiedField& cf, const SearchBox& box,
                                                   int grid_density = 64) {
  const PolyVectorField boundary = boundary_restriction(cf);
  RootSearchOptions opt;
  opt.grid_density = grid_density;
  const RootSearchResult roots = find_roots(boundary, box, opt);

  FixedPointSearch out;
  out.warnings = roots.warnings;
  const std::size_t n = cf.field.n_vars();
  for (const auto& root : roots.roots) {
    FixedPointRecord rec;
    rec.chart = cf.chart;
    rec.z = root.z;
    rec.z.push_back(0.0);
    rec.residual = root.residual;
    rec.seed_count = root.seed_count;
    rec.jacobian = jacobian(cf.field, rec.z);
    rec.boundary_eigenvalues = eigenvalues(jacobian(boundary, root.z));
    rec.transverse_eigenvalue = rec.jacobian(n - 1, n - 1);
    rec.chart_eigenvalues = eigenvalues(rec.jacobian);
    rec.classification = classify(rec.boundary_eigenvalues, rec.jacobian.frobenius_norm());
    out.points.push_back(std::move(rec));
  }
  return out;
}

/// Largest ratio |component of field(t v) orthogonal to v| / |field(t v)|
/// over a log-grid of t in [1e-2, 1e2].
inline double verify_invariant_ray(const PolyVectorField& field, std::span<const double> v, int samples = 25) {
  if (v.size() != field.n_vars()) throw std::invalid_argument("verify_invariant_ray: direction dimension mismatch");
  for (double c : v)
    if (!(c > 0.0)) throw std::invalid_argument("verify_invariant_ray: direction must be strictly positive");
  double vv = 0.0;
  for (double c : v) vv += c * c;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = std::pow(10.0, -2.0 + 4.0 * i / (samples - 1));
    std::vector<double> p(v.begin(), v.end());
    for (double& c : p) c *= t;
    const std::vector<double> F = field.evaluate(p);
    double fv = 0.0, ff = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
      fv += F[k] * v[k];
      ff += F[k] * F[k];
    }
    double orth = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
      const double o = F[k] - fv / vv * v[k];
      orth += o * o;
    }
    if (ff == 0.0) continue;
    worst = std::max(worst, std::sqrt(orth / ff));
  }
  return worst;
}

/// Trajectory of the normalized flow itself, in metric coordinates.
inline Trajectory integrate_flow(const FlagSpace& space, const InvariantMetric& x0, double t_end,
                                 const IntegrationOptions& opt = {}) {
  detail::require_size(space, x0.size());
  auto rhs = [&space](std::span<const double> x) { return nrf_velocity_generic<double>(space, x); };
  return integrate(rhs, std::vector<double>(x0.x().begin(), x0.x().end()), t_end, opt);
}

/// Trajectory of an arbitrary polynomial field (e.g. a chart system).
inline Trajectory integrate_field(const PolyVectorField& field, std::vector<double> x0, double t_end,
                                  const IntegrationOptions& opt = {}) {
  const NumericField f(field);
  auto rhs = [&f](std::span<const double> x) { return f.value(x); };
  return integrate(rhs, std::move(x0), t_end, opt);
}

}  // namespace ricciflow
