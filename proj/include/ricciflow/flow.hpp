#pragma once

// The normalized Ricci flow on diagonal invariant metrics,
//     x_k' = 2 x_k r_k + (2 S / n) x_k,
// and its polynomial form mu(x) * flow(x), where mu is the positive monomial
// that clears every denominator:
//     s = 2:  mu = 2 (d1+d2)(d1+4d2) x1^2 x2
//     s = 3:  mu = 2 d1 d2 d3 (d1+d2+d3)(d1+4d2+9d3) x1^2 x2 x3
// The polynomial field is derived symbolically from the curvature closed
// forms, never transcribed.

#include "ricciflow/catalog.hpp"
#include "ricciflow/curvature.hpp"
#include "ricciflow/vector_field.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace ricciflow {

template <class T>
std::vector<T> nrf_velocity_generic(const FlagSpace& space, std::span<const T> x) {
  const std::vector<T> r = ricci_closed_form<T>(space, x);
  const T S = scalar_closed_form<T>(space, x);
  const T two_s_over_n = lift(Rational(2, space.n), x[0]) * S;
  std::vector<T> v;
  v.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) v.push_back(lift(Rational(2), x[0]) * x[k] * r[k] + two_s_over_n * x[k]);
  return v;
}

inline std::vector<double> nrf_velocity(const FlagSpace& space, const InvariantMetric& g) {
  return nrf_velocity_generic<double>(space, g.x());
}

/// The monomial mu as (coefficient, exponents).
struct ScalingMonomial {
  Rational coefficient;
  Exponents exponents;
};

inline ScalingMonomial scaling_monomial(const FlagSpace& space) {
  const Rational n = space.n;
  if (space.s == 2) {
    const Rational d1 = space.d(1), d2 = space.d(2);
    return {2 * n * (d1 + 4 * d2), {2, 1}};
  }
  if (space.s == 3) {
    const Rational d1 = space.d(1), d2 = space.d(2), d3 = space.d(3);
    return {2 * d1 * d2 * d3 * n * (d1 + 4 * d2 + 9 * d3), {2, 1, 1}};
  }
  throw std::invalid_argument("scaling_monomial: only s = 2 or 3 is supported");
}

inline double scaling_factor(const FlagSpace& space, std::span<const double> x) {
  const ScalingMonomial mu = scaling_monomial(space);
  if (x.size() != mu.exponents.size()) throw std::invalid_argument("scaling_factor: dimension mismatch");
  double v = to_double(mu.coefficient);
  for (std::size_t k = 0; k < x.size(); ++k)
    for (int j = 0; j < mu.exponents[k]; ++j) v *= x[k];
  return v;
}

/// mu * flow as an exact polynomial field, homogeneous of degree 3 (s=2) or 4 (s=3).
inline PolyVectorField scaled_polynomial_field(const FlagSpace& space) {
  const std::size_t s = static_cast<std::size_t>(space.s);
  const ScalingMonomial mu_data = scaling_monomial(space);
  std::vector<Polynomial> vars;
  for (std::size_t k = 0; k < s; ++k) vars.push_back(Polynomial::variable(s, k));
  const std::vector<Polynomial> v = nrf_velocity_generic<Polynomial>(space, vars);
  const Polynomial mu = Polynomial::monomial(mu_data.exponents, mu_data.coefficient);
  std::vector<Polynomial> comps;
  comps.reserve(s);
  for (const auto& vk : v) {
    Polynomial c = mu * vk;
    if (!c.is_polynomial()) throw std::logic_error("scaled_polynomial_field: mu did not clear all denominators");
    comps.push_back(std::move(c));
  }
  return PolyVectorField(std::move(comps));
}

}  // namespace ricciflow
