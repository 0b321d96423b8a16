#pragma once

// Zeros of square polynomial systems inside a positive box, by Newton
// iteration from a log-uniform seed grid. Coincident limits are merged and
// counted, and sign-change cells left without a zero are reported.

#include "ricciflow/linalg.hpp"
#include "ricciflow/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricciflow {

struct SearchBox {
  std::vector<double> lower;
  std::vector<double> upper;

  static SearchBox cube(std::size_t n, double lo, double hi) { return {std::vector<double>(n, lo), std::vector<double>(n, hi)}; }

  std::size_t dim() const { return lower.size(); }

  bool contains(std::span<const double> z, double rel_slack = 1e-12) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      const double slack = rel_slack * std::max(std::fabs(lower[i]), std::fabs(upper[i]));
      if (!(z[i] >= lower[i] - slack && z[i] <= upper[i] + slack)) return false;
    }
    return true;
  }
};

struct RootSearchOptions {
  int grid_density = 64;
  double merge_radius = 1e-8;
  double residual_tol = 1e-12;
  int max_iterations = 100;
};

struct Root {
  std::vector<double> z;
  double residual = 0.0;  // sup-norm of the system divided by its largest coefficient
  int seed_count = 0;
};

struct RootWarning {
  std::vector<double> cell_lower;
  std::vector<double> cell_upper;
  std::string message;
};

struct RootSearchResult {
  std::vector<Root> roots;
  std::vector<RootWarning> warnings;
};

namespace detail {

inline double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct NewtonOutcome {
  std::vector<double> z;
  double residual;
  bool converged;
};

/// Damped Newton on a normalized system.
inline NewtonOutcome newton(const NumericField& f, std::vector<double> z, const RootSearchOptions& opt) {
  const std::size_t n = z.size();
  std::vector<double> F = f.value(z);
  double res = sup_norm(F);
  bool small_step = false;
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (!std::isfinite(res)) return {z, res, false};
    std::vector<double> step;
    try {
      step = solve_linear(Matrix(n, f.jacobian(z)), F);
    } catch (const SingularMatrix&) {
      return {z, res, false};
    }
    double lambda = 1.0;
    std::vector<double> trial(n);
    std::vector<double> Ft;
    double res_t = std::numeric_limits<double>::infinity();
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] - lambda * step[i];
      Ft = f.value(trial);
      res_t = sup_norm(Ft);
      if (std::isfinite(res_t) && res_t <= (1.0 - 1e-4 * lambda) * res) break;
      lambda *= 0.5;
    }
    double step_norm = 0.0, z_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      step_norm = std::max(step_norm, std::fabs(lambda * step[i]));
      z_norm = std::max(z_norm, std::fabs(z[i]));
    }
    if (!(res_t <= res)) {
      // No decrease possible: at a root to working precision or stuck.
      return {z, res, res <= opt.residual_tol};
    }
    z = trial;
    F = std::move(Ft);
    res = res_t;
    if (step_norm <= 1e-15 * std::max(1.0, z_norm)) {
      if (small_step) break;
      small_step = true;
    }
    if (res == 0.0) break;
  }
  return {z, res, res <= opt.residual_tol};
}

inline std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("search box must satisfy 0 < lower < upper");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  return g;
}

inline void merge_root(std::vector<Root>& roots, const NewtonOutcome& o, double radius) {
  for (auto& r : roots) {
    double dist = 0.0;
    for (std::size_t i = 0; i < r.z.size(); ++i) dist += (r.z[i] - o.z[i]) * (r.z[i] - o.z[i]);
    if (std::sqrt(dist) <= radius) {
      ++r.seed_count;
      if (o.residual < r.residual) {
        r.z = o.z;
        r.residual = o.residual;
      }
      return;
    }
  }
  roots.push_back({o.z, o.residual, 1});
}

}  // namespace detail

/// All zeros of `system` (m equations in m unknowns, m in {1,2,3}) inside `box`.
inline RootSearchResult find_roots(const PolyVectorField& system, const SearchBox& box, const RootSearchOptions& opt = {}) {
  const std::size_t m = system.n_vars();
  if (system.size() != m) throw std::invalid_argument("find_roots: system must be square");
  if (m < 1 || m > 3) throw std::invalid_argument("find_roots: only 1 to 3 unknowns are supported");
  if (box.dim() != m) throw std::invalid_argument("find_roots: box dimension mismatch");
  if (opt.grid_density < 2) throw std::invalid_argument("find_roots: grid density must be at least 2");

  const Rational scale = system.max_abs_coefficient();
  RootSearchResult result;
  if (scale == 0) throw std::invalid_argument("find_roots: system is identically zero");
  const NumericField f(system, scale);

  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < m; ++i) axes.push_back(detail::log_grid(box.lower[i], box.upper[i], opt.grid_density));

  auto try_seed = [&](const std::vector<double>& seed) -> bool {
    const detail::NewtonOutcome o = detail::newton(f, seed, opt);
    if (!o.converged || !box.contains(o.z)) return o.converged;
    detail::merge_root(result.roots, o, opt.merge_radius);
    return true;
  };

  // Walk the full tensor grid.
  const std::size_t g = static_cast<std::size_t>(opt.grid_density);
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= g;
  auto grid_point = [&](std::size_t flat) {
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) {
      z[i] = axes[i][flat % g];
      flat /= g;
    }
    return z;
  };
  std::vector<std::vector<double>> values(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto seed = grid_point(flat);
    values[flat] = f.value(seed);
    try_seed(seed);
  }

  // Cells in which every component changes sign but no zero was located.
  const std::size_t cells_per_axis = g - 1;
  std::size_t cell_total = 1;
  for (std::size_t i = 0; i < m; ++i) cell_total *= cells_per_axis;
  for (std::size_t cell = 0; cell < cell_total; ++cell) {
    std::vector<std::size_t> idx(m);
    std::size_t rest = cell;
    for (std::size_t i = 0; i < m; ++i) {
      idx[i] = rest % cells_per_axis;
      rest /= cells_per_axis;
    }
    bool all_change = true;
    for (std::size_t comp = 0; comp < m && all_change; ++comp) {
      bool pos = false, neg = false;
      for (std::size_t corner = 0; corner < (std::size_t{1} << m); ++corner) {
        std::size_t flat = 0, stride = 1;
        for (std::size_t i = 0; i < m; ++i) {
          flat += (idx[i] + ((corner >> i) & 1U)) * stride;
          stride *= g;
        }
        const double v = values[flat][comp];
        pos = pos || v > 0.0;
        neg = neg || v < 0.0;
      }
      all_change = pos && neg;
    }
    if (!all_change) continue;
    std::vector<double> lo(m), hi(m);
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = axes[i][idx[i]];
      hi[i] = axes[i][idx[i] + 1];
    }
    auto near_known = [&] {
      for (const auto& r : result.roots) {
        bool inside = true;
        for (std::size_t i = 0; i < m; ++i) {
          const double w = hi[i] - lo[i];
          inside = inside && r.z[i] >= lo[i] - w && r.z[i] <= hi[i] + w;
        }
        if (inside) return true;
      }
      return false;
    };
    if (near_known()) continue;
    std::vector<double> centre(m);
    for (std::size_t i = 0; i < m; ++i) centre[i] = std::sqrt(lo[i] * hi[i]);
    bool any_converged = try_seed(centre);
    for (std::size_t corner = 0; corner < (std::size_t{1} << m); ++corner) {
      std::vector<double> seed(m);
      for (std::size_t i = 0; i < m; ++i) seed[i] = ((corner >> i) & 1U) ? hi[i] : lo[i];
      any_converged = try_seed(seed) || any_converged;
    }
    if (!any_converged) {
      std::ostringstream msg;
      msg << "Newton did not converge from any seed of a sign-change cell";
      result.warnings.push_back({lo, hi, msg.str()});
    }
  }

  std::sort(result.roots.begin(), result.roots.end(), [](const Root& a, const Root& b) { return a.z < b.z; });
  return result;
}

}  // namespace ricciflow
