#pragma once

// Exact rational scalars and the scalar-generic helpers (lift, reciprocal)
// used by the curvature formulas so one expression serves double, Rational
// and Laurent-polynomial arguments.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ricciflow {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

/// Exact value of a finite binary64 number.
inline Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("exact_rational: non-finite input");
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);
  // 53 bits is enough to make the scaled mantissa an integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational out{Integer(scaled)};
  exponent -= 53;
  if (exponent > 0) {
    out *= Rational(Integer(1) << exponent);
  } else if (exponent < 0) {
    out /= Rational(Integer(1) << -exponent);
  }
  return out;
}

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Rational& q) {
  const Integer den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

// Scalar-generic helpers. Overloads for Polynomial live next to that type.
inline double lift(const Rational& q, double /*like*/) { return to_double(q); }
inline Rational lift(const Rational& q, const Rational& /*like*/) { return q; }

inline double reciprocal(double x) { return 1.0 / x; }
inline Rational reciprocal(const Rational& x) {
  if (x == 0) throw std::domain_error("reciprocal of zero");
  return Rational(1) / x;
}

}  // namespace ricciflow
