#pragma once

// Measurable invariants of the pipeline. Each measure_* function returns the
// worst error it saw; the Check wrappers compare against a tolerance.

#include "ricciflow/catalog.hpp"
#include "ricciflow/compactify.hpp"
#include "ricciflow/curvature.hpp"
#include "ricciflow/dynamics.hpp"
#include "ricciflow/einstein.hpp"
#include "ricciflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ricciflow {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SpaceVerification {
  std::string space;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

/// Log-uniform random metric with coefficients in [lo, hi].
inline std::vector<double> random_metric(std::mt19937_64& rng, std::size_t s, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> x(s);
  for (double& v : x) v = std::exp(u(rng));
  return x;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace detail

/// r(cx) = r(x)/c and S(cx) = S(x)/c, relative to max|r(x)/c| and |S(x)/c|.
inline double measure_homogeneity(const FlagSpace& sp, int samples, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uc(std::log(1e-3), std::log(1e3));
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::vector<double> x = detail::random_metric(rng, static_cast<std::size_t>(sp.s));
    const double c = std::exp(uc(rng));
    std::vector<double> cx = x;
    for (double& v : cx) v *= c;
    const auto r = ricci_closed_form<double>(sp, x);
    const auto rc = ricci_closed_form<double>(sp, cx);
    const double scale = detail::max_abs(r) / c;
    for (std::size_t k = 0; k < r.size(); ++k) worst = std::max(worst, std::fabs(rc[k] - r[k] / c) / scale);
    const double S = scalar_closed_form<double>(sp, x), Sc = scalar_closed_form<double>(sp, cx);
    const double sscale = detail::scalar_term_magnitude(sp, x) / c;
    worst = std::max(worst, std::fabs(Sc - S / c) / sscale);
  }
  return worst;
}

/// |S - sum d_k r_k| relative to the size of the terms of S.
inline double measure_trace_identity(const FlagSpace& sp, int samples, std::uint64_t seed = 2) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::vector<double> x = detail::random_metric(rng, static_cast<std::size_t>(sp.s));
    const auto r = ricci_closed_form<double>(sp, x);
    double trace = 0.0;
    for (int k = 1; k <= sp.s; ++k) trace += sp.d(k) * r[static_cast<std::size_t>(k - 1)];
    const double S = scalar_closed_form<double>(sp, x);
    worst = std::max(worst, std::fabs(S - trace) / detail::scalar_term_magnitude(sp, x));
  }
  return worst;
}

/// Closed forms against the general triple-table sum.
inline double measure_generic_route(const FlagSpace& sp, int samples, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  const TripleTable table = TripleTable::from_space(sp);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::vector<double> x = detail::random_metric(rng, static_cast<std::size_t>(sp.s));
    const auto a = ricci_closed_form<double>(sp, x);
    const auto b = ricci_generic_form<double>(sp.dims, table, x);
    const double scale = detail::max_abs(a);
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::fabs(a[k] - b[k]) / scale);
    const double S = scalar_closed_form<double>(sp, x), Sg = scalar_generic_form<double>(sp.dims, table, x);
    worst = std::max(worst, std::fabs(S - Sg) / detail::scalar_term_magnitude(sp, x));
  }
  return worst;
}

/// |F(x) - mu(x) v(x)| / |F(x)| for the scaled field F, with mu(x) > 0 checked.
/// Returns +inf if mu is ever non-positive.
inline double measure_scaled_proportionality(const FlagSpace& sp, const PolyVectorField& F, int samples,
                                             std::uint64_t seed = 4) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::vector<double> x = detail::random_metric(rng, static_cast<std::size_t>(sp.s));
    const double mu = scaling_factor(sp, x);
    if (!(mu > 0.0)) return std::numeric_limits<double>::infinity();
    const auto v = nrf_velocity_generic<double>(sp, x);
    const auto f = F.evaluate(x);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      num += (f[k] - mu * v[k]) * (f[k] - mu * v[k]);
      den += f[k] * f[k];
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

inline bool components_divisible(const PolyVectorField& F) {
  for (std::size_t k = 0; k < F.size(); ++k)
    if (!F[k].divisible_by_variable(k)) return false;
  return true;
}

/// Exact Jacobian against central differences of the exact field.
inline double measure_jacobian_fd(const PolyVectorField& F, int samples, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::vector<double> x = detail::random_metric(rng, F.n_vars());
    const Matrix J = jacobian(F, x);
    const double scale = J.frobenius_norm();
    for (std::size_t j = 0; j < F.n_vars(); ++j) {
      const double h = 1e-5 * x[j];
      std::vector<double> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const auto fp = F.evaluate(xp), fm = F.evaluate(xm);
      for (std::size_t r = 0; r < F.size(); ++r)
        worst = std::max(worst, std::fabs((fp[r] - fm[r]) / (xp[j] - xm[j]) - J(r, j)) / scale);
    }
  }
  return worst;
}

/// Smallest |F(x)| / (max coefficient * |x|^d) over a points^s log-grid of
/// [1e-2, 1e2]^s. Strictly positive iff no sampled point is an equilibrium.
/// Evaluated in long double; the minima seen are many orders above rounding.
inline double min_normalized_field_norm(const PolyVectorField& F, int points = 20) {
  const std::size_t s = F.n_vars();
  const NumericField f(F, F.max_abs_coefficient());
  std::vector<double> axis(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) axis[static_cast<std::size_t>(i)] = std::pow(10.0, -2.0 + 4.0 * i / (points - 1));
  std::size_t total = 1;
  for (std::size_t k = 0; k < s; ++k) total *= static_cast<std::size_t>(points);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> x(s);
    std::size_t rest = flat;
    double xn = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
      x[k] = axis[rest % static_cast<std::size_t>(points)];
      rest /= static_cast<std::size_t>(points);
      xn += x[k] * x[k];
    }
    double fn = 0.0;
    for (double v : f.value(x)) fn += v * v;
    best = std::min(best, std::sqrt(fn) / std::pow(std::sqrt(xn), F.degree()));
  }
  return best;
}

/// Largest per-coordinate distance between two metric sets matched greedily;
/// +inf if the counts differ or some metric has no partner.
inline double metric_set_distance(const std::vector<EinsteinMetric>& a, const std::vector<EinsteinMetric>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& ea : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || b[j].metric.size() != ea.metric.size()) continue;
      double d = 0.0;
      for (std::size_t k = 0; k < ea.metric.size(); ++k) d = std::max(d, std::fabs(ea.metric[k] - b[j].metric[k]));
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best_j == b.size()) return std::numeric_limits<double>::infinity();
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

/// Expected classification of a U1 boundary equilibrium: the Kahler point
/// repels, the rest attract (s = 2) or are saddles (s = 3).
inline Classification expected_classification(const FlagSpace& sp, const FixedPointRecord& r) {
  std::vector<double> x{1.0};
  x.insert(x.end(), r.z.begin(), r.z.end() - 1);
  if (detail::near_kahler(x)) return Classification::RepellingNode;
  return sp.s == 2 ? Classification::AttractingNode : Classification::Saddle;
}

struct ConvergenceSample {
  std::vector<double> initial;
  std::vector<double> final_state;
  double error = 0.0;
  StopReason stop = StopReason::Completed;
};

struct ConvergenceStudy {
  std::vector<ConvergenceSample> samples;
  double worst = 0.0;
  std::size_t incomplete = 0;  // runs stopped before the horizon
};

/// Random two-summand metrics with |x2/x1 - 2| >= 0.05, each flowed by the
/// normalized flow to t_end; error is the distance of the final unit
/// direction from the unit direction of `target`.
inline ConvergenceStudy flow_direction_convergence(const FlagSpace& sp, std::span<const double> target, int count,
                                                   double t_end, std::uint64_t seed = 7,
                                                   const IntegrationOptions& opt = {}) {
  if (sp.s != 2) throw std::invalid_argument("flow_direction_convergence: two-summand spaces only");
  std::vector<double> dir(target.begin(), target.end());
  const double tn = std::hypot(dir[0], dir[1]);
  for (double& v : dir) v /= tn;
  std::mt19937_64 rng(seed);
  ConvergenceStudy out;
  while (static_cast<int>(out.samples.size()) < count) {
    std::vector<double> x = detail::random_metric(rng, 2);
    if (std::fabs(x[1] / x[0] - 2.0) < 0.05) continue;
    ConvergenceSample smp;
    smp.initial = x;
    const Trajectory traj = integrate_flow(sp, InvariantMetric(x), t_end, opt);
    smp.stop = traj.stop;
    smp.final_state = traj.final_state();
    const auto d = traj.final_direction();
    smp.error = std::hypot(d[0] - dir[0], d[1] - dir[1]);
    out.worst = std::max(out.worst, smp.error);
    if (traj.stop != StopReason::Completed) ++out.incomplete;
    out.samples.push_back(std::move(smp));
  }
  return out;
}

/// The same question in chart U1 of the scaled field, where the direction
/// x2/x1 is the coordinate z1 and infinity is z2 = 0. Initial metrics lie
/// below the Kahler ray (x2/x1 < 2); error is the sup-distance of the final
/// chart point from (target, 0).
inline ConvergenceStudy chart_convergence(const FlagSpace& sp, double target_z1, int count, double t_end,
                                          std::uint64_t seed = 8) {
  if (sp.s != 2) throw std::invalid_argument("chart_convergence: two-summand spaces only");
  const CompactifiedField cf = compactify(scaled_polynomial_field(sp), Chart::U1);
  IntegrationOptions opt;
  opt.require_positive = false;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ratio(0.02, 1.95);
  ConvergenceStudy out;
  while (static_cast<int>(out.samples.size()) < count) {
    const double x1 = detail::random_metric(rng, 1)[0];
    const double q = ratio(rng);
    if (std::fabs(q - target_z1) < 1e-3) continue;
    ConvergenceSample smp;
    smp.initial = {x1, q * x1};
    const Trajectory traj = integrate_field(cf.field, to_chart(Chart::U1, smp.initial), t_end, opt);
    smp.stop = traj.stop;
    smp.final_state = traj.final_state();
    smp.error = std::max(std::fabs(smp.final_state[0] - target_z1), std::fabs(smp.final_state[1]));
    out.worst = std::max(out.worst, smp.error);
    if (traj.stop != StopReason::Completed) ++out.incomplete;
    out.samples.push_back(std::move(smp));
  }
  return out;
}

/// Largest |x2/x1 - 2| along normalized-flow trajectories started on the Kahler ray.
inline double kahler_ray_drift(const FlagSpace& sp, std::span<const double> scales, double t_end,
                               const IntegrationOptions& opt = {}) {
  if (sp.s != 2) throw std::invalid_argument("kahler_ray_drift: two-summand spaces only");
  double worst = 0.0;
  for (double c : scales) {
    const Trajectory traj = integrate_flow(sp, InvariantMetric({c, 2.0 * c}), t_end, opt);
    for (const auto& x : traj.states) worst = std::max(worst, std::fabs(x[1] / x[0] - 2.0));
  }
  return worst;
}

struct VerifyOptions {
  std::optional<double> tol;  // overrides every per-check tolerance
  int samples = 100;
  int grid_density = 64;
};

inline SpaceVerification verify_space(const FlagSpace& sp, const VerifyOptions& opt = {}) {
  SpaceVerification out;
  out.space = sp.id;
  auto tol = [&](double def) { return opt.tol.value_or(def); };
  auto add = [&](std::string name, double measured, double t, std::string detail = {}) {
    out.checks.push_back({std::move(name), measured <= t, measured, t, std::move(detail)});
  };
  auto add_bool = [&](std::string name, bool ok, std::string detail = {}) {
    out.checks.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)});
  };

  try {
    const std::size_t expected = static_cast<std::size_t>(sp.s);
    const std::vector<double> kahler = sp.s == 2 ? std::vector<double>{1, 2} : std::vector<double>{1, 2, 3};
    add("kahler-einstein residual", einstein_residual(sp, InvariantMetric(kahler)), tol(1e-12));
    add("homogeneity", measure_homogeneity(sp, opt.samples), tol(1e-12));
    add("trace identity", measure_trace_identity(sp, opt.samples), tol(1e-12));
    add("generic route agreement", measure_generic_route(sp, opt.samples), tol(1e-13));

    const PolyVectorField F = scaled_polynomial_field(sp);
    add("scaled field proportionality", measure_scaled_proportionality(sp, F, 2 * opt.samples), tol(1e-12));
    add_bool("component divisibility", components_divisible(F));
    add("jacobian finite differences", measure_jacobian_fd(F, 20), tol(1e-6));
    const double min_norm = min_normalized_field_norm(F);
    out.checks.push_back({"no interior equilibria", min_norm > 0.0, min_norm, 0.0, "minimum normalized field norm"});

    const FixedPointSearch fps = infinity_fixed_points(sp, opt.grid_density);
    {
      std::ostringstream os;
      os << fps.points.size() << " found, " << fps.warnings.size() << " warnings";
      add_bool("fixed point count", fps.points.size() == expected && fps.warnings.empty(), os.str());
    }
    double worst_res = 0.0;
    bool classes_ok = true;
    std::ostringstream cls;
    for (const auto& r : fps.points) {
      worst_res = std::max(worst_res, r.residual);
      const Classification want = expected_classification(sp, r);
      classes_ok = classes_ok && r.classification == want;
      cls << to_string(r.classification) << ' ';
    }
    add("fixed point residual", worst_res, tol(1e-10));
    add_bool("classification", classes_ok && !fps.points.empty(), cls.str());

    const std::vector<EinsteinMetric> direct = solve_einstein(sp);
    double worst_e = 0.0;
    for (const auto& e : direct) worst_e = std::max(worst_e, e.residual);
    add_bool("einstein count", direct.size() == expected);
    add("einstein residual", worst_e, tol(1e-10));

    double worst_ray = 0.0;
    for (const auto& e : direct) worst_ray = std::max(worst_ray, verify_invariant_ray(F, e.metric.x()));
    add("ray invariance", worst_ray, tol(1e-12));

    const FixedPointMetrics mapped = fixed_points_to_metrics(sp, fps.points);
    std::vector<EinsteinMetric> from_fp;
    for (const auto& m : mapped.metrics) from_fp.push_back(m.einstein);
    add("oracle agreement", mapped.discrepancies.empty() ? metric_set_distance(direct, from_fp)
                                                         : std::numeric_limits<double>::infinity(),
        tol(1e-6));
  } catch (const std::exception& e) {
    out.checks.push_back({"internal error", false, 0.0, 0.0, e.what()});
  }
  return out;
}

/// One task per space.
inline std::vector<SpaceVerification> verify_spaces(const std::vector<FlagSpace>& spaces, const VerifyOptions& opt = {}) {
  std::vector<std::future<SpaceVerification>> jobs;
  jobs.reserve(spaces.size());
  for (const auto& sp : spaces) jobs.push_back(std::async(std::launch::async, [&sp, &opt] { return verify_space(sp, opt); }));
  std::vector<SpaceVerification> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace ricciflow
