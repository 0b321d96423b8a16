#pragma once

// Adaptive Dormand-Prince 5(4) integration with positivity and blow-up stops.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ricciflow {

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  bool require_positive = true;  // stop once a coordinate is <= 0
  double blowup_norm = 1e12;
  double initial_step = 0.0;  // 0 selects automatically
  std::size_t max_steps = 50'000'000;
};

enum class StopReason { Completed, LeftPositiveCone, BlowUp, StepUnderflow };

inline std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::LeftPositiveCone: return "left-positive-cone";
    case StopReason::BlowUp: return "blow-up";
    case StopReason::StepUnderflow: return "step-underflow";
  }
  return "?";
}

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  StopReason stop = StopReason::Completed;
  std::string message;

  const std::vector<double>& final_state() const { return states.back(); }

  std::vector<double> final_direction() const {
    std::vector<double> d = states.back();
    double n = 0.0;
    for (double v : d) n += v * v;
    n = std::sqrt(n);
    for (double& v : d) v /= n;
    return d;
  }
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double rms_error(std::span<const double> err, std::span<const double> y0, std::span<const double> y1,
                        const IntegrationOptions& opt) {
  double s = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
    s += (err[i] / sc) * (err[i] / sc);
  }
  return std::sqrt(s / static_cast<double>(err.size()));
}

}  // namespace detail

/// Integrate y' = rhs(y) from t = 0 to t_end. `rhs` maps a state span to a
/// std::vector<double> of the same length.
template <class Rhs>
Trajectory integrate(Rhs&& rhs, std::vector<double> y0, double t_end, const IntegrationOptions& opt = {}) {
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0)) throw std::invalid_argument("integrate: tolerances must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
  if (opt.require_positive)
    for (double v : y0)
      if (!(v > 0.0)) throw std::invalid_argument("integrate: initial state must be strictly positive");

  // Dormand-Prince coefficients.
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const std::size_t n = y0.size();
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  std::vector<double> y = std::move(y0);
  std::vector<double> k1 = rhs(std::span<const double>(y));
  if (k1.size() != n) throw std::invalid_argument("integrate: right-hand side has the wrong length");

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Hairer-Norsett-Wanner starting step.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::fabs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end);
  }

  double t = 0.0;
  std::vector<double> tmp(n), y5(n), err(n);
  while (t < t_end) {
    if (traj.accepted + traj.rejected >= opt.max_steps) throw IntegrationError("integrate: step budget exhausted");
    if (h < 1e-14 * t_end) {
      // Typically a finite-time singularity of the field.
      std::ostringstream os;
      os << "step size underflow (h=" << h << ") at t=" << t;
      traj.stop = StopReason::StepUnderflow;
      traj.message = os.str();
      return traj;
    }
    const bool last = h >= t_end - t - 1e-12 * t_end;
    if (last) h = t_end - t;
    auto stage = [&](std::initializer_list<std::pair<const std::vector<double>*, double>> terms) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (const auto& [k, a] : terms) s += h * a * (*k)[i];
        tmp[i] = s;
      }
      return rhs(std::span<const double>(tmp));
    };
    const auto k2 = stage({{&k1, a21}});
    const auto k3 = stage({{&k1, a31}, {&k2, a32}});
    const auto k4 = stage({{&k1, a41}, {&k2, a42}, {&k3, a43}});
    const auto k5 = stage({{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
    const auto k6 = stage({{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
    for (std::size_t i = 0; i < n; ++i) y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const auto k7 = rhs(std::span<const double>(y5));
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    double en = detail::rms_error(err, y, y5, opt);
    bool finite = std::isfinite(en);
    for (double v : y5) finite = finite && std::isfinite(v);
    if (!finite) {
      ++traj.rejected;
      h *= 0.1;
      continue;
    }
    if (en <= 1.0) {
      t = last ? t_end : t + h;
      y = y5;
      k1 = k7;  // first-same-as-last
      ++traj.accepted;
      traj.times.push_back(t);
      traj.states.push_back(y);
      if (opt.require_positive && std::any_of(y.begin(), y.end(), [](double v) { return v <= 0.0; })) {
        traj.stop = StopReason::LeftPositiveCone;
        traj.message = "a coordinate became non-positive";
        return traj;
      }
      double norm = 0.0;
      for (double v : y) norm += v * v;
      if (std::sqrt(norm) > opt.blowup_norm) {
        traj.stop = StopReason::BlowUp;
        traj.message = "state norm exceeded the blow-up threshold";
        return traj;
      }
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++traj.rejected;
      h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
    }
  }
  return traj;
}

}  // namespace ricciflow
