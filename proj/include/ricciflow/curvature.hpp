#pragma once

// Ricci components and scalar curvature of diagonal invariant metrics.
//
// The components r_k are the eigen-components of the Ricci operator (each is
// homogeneous of degree -1 in the metric coefficients), with the sign
// convention of the flow used throughout this library: the minus sign of the
// Ricci operator is dropped because metrics are measured against -B.
//
// Two independent routes are provided:
//  * closed forms specialised to two summands and to Type I three summands;
//  * the general structure-constant sum over a fully symmetric triple table.
// Both are templates over the scalar type, so the same expression is
// evaluated in double, exactly in Rational, or symbolically on Laurent
// polynomials (see flow.hpp and einstein.hpp).

#include "ricciflow/catalog.hpp"
#include "ricciflow/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricciflow {

class InvariantMetric {
 public:
  explicit InvariantMetric(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw std::invalid_argument("InvariantMetric: empty coefficient vector");
    for (double v : x_)
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("InvariantMetric: coefficients must be finite and strictly positive");
  }

  std::span<const double> x() const { return x_; }
  std::size_t size() const { return x_.size(); }
  double operator[](std::size_t k) const { return x_[k]; }

  InvariantMetric scaled(double c) const {
    std::vector<double> y = x_;
    for (double& v : y) v *= c;
    return InvariantMetric(std::move(y));
  }

 private:
  std::vector<double> x_;
};

struct RicciComponents {
  std::vector<double> r;
  double scalar = 0.0;
};

namespace detail {

inline void require_size(const FlagSpace& space, std::size_t n) {
  if (n != static_cast<std::size_t>(space.s))
    throw std::invalid_argument("metric has " + std::to_string(n) + " coefficients but '" + space.id + "' has " +
                                std::to_string(space.s) + " summands");
}

}  // namespace detail

/// Closed-form r_k for s = 2 and for Type I s = 3.
template <class T>
std::vector<T> ricci_closed_form(const FlagSpace& space, std::span<const T> x) {
  detail::require_size(space, x.size());
  auto k = [&](const Rational& q) { return lift(q, x[0]); };
  const Rational half(1, 2);
  if (space.s == 2) {
    const Rational d1 = space.d(1), d2 = space.d(2);
    const Rational c = space.two().triple211;
    const T i1 = reciprocal(x[0]), i2 = reciprocal(x[1]);
    const T x2_over_x1sq = x[1] * i1 * i1;
    T r1 = k(half) * i1 - k(c / (2 * d1)) * x2_over_x1sq;
    T r2 = k(half) * i2 + k(c / (4 * d2)) * x2_over_x1sq - k(c / (2 * d2)) * i2;
    return {r1, r2};
  }
  const Rational d1 = space.d(1), d2 = space.d(2), d3 = space.d(3);
  const Rational a = space.three().c112, b = space.three().c123;
  const T i1 = reciprocal(x[0]), i2 = reciprocal(x[1]), i3 = reciprocal(x[2]);
  const T p1 = x[0] * i2 * i3;  // x1/(x2 x3)
  const T p2 = x[1] * i1 * i3;  // x2/(x1 x3)
  const T p3 = x[2] * i1 * i2;  // x3/(x1 x2)
  const T x2_over_x1sq = x[1] * i1 * i1;
  T r1 = k(half) * i1 - k(a / (2 * d1)) * x2_over_x1sq + k(b / (2 * d1)) * (p1 - p2 - p3);
  T r2 = k(half) * i2 + k(a / (4 * d2)) * x2_over_x1sq - k(a / (2 * d2)) * i2 + k(b / (2 * d2)) * (p2 - p1 - p3);
  T r3 = k(half) * i3 + k(b / (2 * d3)) * (p3 - p1 - p2);
  return {r1, r2, r3};
}

/// Closed-form scalar curvature (the direct formula, not the trace).
template <class T>
T scalar_closed_form(const FlagSpace& space, std::span<const T> x) {
  detail::require_size(space, x.size());
  auto k = [&](const Rational& q) { return lift(q, x[0]); };
  const Rational half(1, 2), quarter(1, 4);
  if (space.s == 2) {
    const Rational c = space.two().triple211;
    const T i1 = reciprocal(x[0]), i2 = reciprocal(x[1]);
    return k(half * space.d(1)) * i1 + k(half * space.d(2)) * i2 - k(quarter * c) * (x[1] * i1 * i1) -
           k(half * c) * i2;
  }
  const Rational a = space.three().c112, b = space.three().c123;
  const T i1 = reciprocal(x[0]), i2 = reciprocal(x[1]), i3 = reciprocal(x[2]);
  return k(half * space.d(1)) * i1 + k(half * space.d(2)) * i2 + k(half * space.d(3)) * i3 -
         k(quarter * a) * (x[1] * i1 * i1) - k(half * a) * i2 -
         k(half * b) * (x[0] * i2 * i3 + x[1] * i1 * i3 + x[2] * i1 * i2);
}

class InvalidTripleTable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structure constants [k;ij], indices 1-based.
class TripleTable {
 public:
  explicit TripleTable(int s) : s_(s), values_(static_cast<std::size_t>(s * s * s), Rational(0)) {
    if (s < 1) throw std::invalid_argument("TripleTable: need at least one summand");
  }

  static TripleTable from_space(const FlagSpace& space) {
    TripleTable t(space.s);
    if (space.s == 2) {
      t.set_symmetric(2, 1, 1, space.two().triple211);
    } else {
      t.set_symmetric(2, 1, 1, space.three().c112);
      t.set_symmetric(3, 1, 2, space.three().c123);
    }
    return t;
  }

  int s() const { return s_; }
  const Rational& operator()(int k, int i, int j) const { return values_[index(k, i, j)]; }
  void set(int k, int i, int j, const Rational& v) { values_[index(k, i, j)] = v; }

  /// Assign v to every permutation of (k, i, j).
  void set_symmetric(int k, int i, int j, const Rational& v) {
    std::array<int, 3> idx{k, i, j};
    std::sort(idx.begin(), idx.end());
    do {
      set(idx[0], idx[1], idx[2], v);
    } while (std::next_permutation(idx.begin(), idx.end()));
  }

  void validate() const {
    for (int k = 1; k <= s_; ++k)
      for (int i = 1; i <= s_; ++i)
        for (int j = 1; j <= s_; ++j) {
          const Rational& v = (*this)(k, i, j);
          if (v < 0) throw InvalidTripleTable("triple table has a negative entry");
          if (v != (*this)(k, j, i) || v != (*this)(i, k, j) || v != (*this)(j, i, k))
            throw InvalidTripleTable("triple table is not symmetric in all three entries");
        }
  }

 private:
  std::size_t index(int k, int i, int j) const {
    if (k < 1 || i < 1 || j < 1 || k > s_ || i > s_ || j > s_) throw std::out_of_range("TripleTable index");
    return static_cast<std::size_t>(((k - 1) * s_ + (i - 1)) * s_ + (j - 1));
  }

  int s_;
  std::vector<Rational> values_;
};

/// General s-summand Ricci components from a triple table:
///   r_k = 1/(2x_k) + 1/(4d_k) sum_ij x_k/(x_i x_j)[k;ij] - 1/(2d_k) sum_ij x_j/(x_k x_i)[j;ki]
template <class T>
std::vector<T> ricci_generic_form(std::span<const int> dims, const TripleTable& table, std::span<const T> x) {
  const int s = table.s();
  if (dims.size() != static_cast<std::size_t>(s) || x.size() != dims.size())
    throw std::invalid_argument("ricci_generic_form: dimension mismatch");
  std::vector<T> inv;
  inv.reserve(x.size());
  for (const T& v : x) inv.push_back(reciprocal(v));
  std::vector<T> r;
  r.reserve(x.size());
  for (int k = 1; k <= s; ++k) {
    const Rational dk = dims[static_cast<std::size_t>(k - 1)];
    T rk = lift(Rational(1, 2), x[0]) * inv[k - 1];
    for (int i = 1; i <= s; ++i) {
      for (int j = 1; j <= s; ++j) {
        const Rational& kij = table(k, i, j);
        if (kij != 0) rk = rk + lift(kij / (4 * dk), x[0]) * (x[k - 1] * inv[i - 1] * inv[j - 1]);
        const Rational& jki = table(j, k, i);
        if (jki != 0) rk = rk - lift(jki / (2 * dk), x[0]) * (x[j - 1] * inv[k - 1] * inv[i - 1]);
      }
    }
    r.push_back(std::move(rk));
  }
  return r;
}

/// S = 1/2 sum_i d_i/x_i - 1/4 sum_ijk [k;ij] x_k/(x_i x_j)
template <class T>
T scalar_generic_form(std::span<const int> dims, const TripleTable& table, std::span<const T> x) {
  const int s = table.s();
  if (dims.size() != static_cast<std::size_t>(s) || x.size() != dims.size())
    throw std::invalid_argument("scalar_generic_form: dimension mismatch");
  T S = lift(Rational(0), x[0]);
  for (int i = 1; i <= s; ++i) S = S + lift(Rational(dims[i - 1], 2), x[0]) * reciprocal(x[i - 1]);
  for (int k = 1; k <= s; ++k)
    for (int i = 1; i <= s; ++i)
      for (int j = 1; j <= s; ++j) {
        const Rational& kij = table(k, i, j);
        if (kij != 0) S = S - lift(kij / 4, x[0]) * (x[k - 1] * reciprocal(x[i - 1]) * reciprocal(x[j - 1]));
      }
  return S;
}

namespace detail {

/// Size of the individual terms of the closed-form scalar curvature; the
/// round-off scale for comparing the two scalar routes.
inline double scalar_term_magnitude(const FlagSpace& space, std::span<const double> x) {
  const TripleTable table = TripleTable::from_space(space);
  double m = 0.0;
  for (int i = 1; i <= space.s; ++i) m += 0.5 * space.d(i) / x[i - 1];
  for (int k = 1; k <= space.s; ++k)
    for (int i = 1; i <= space.s; ++i)
      for (int j = 1; j <= space.s; ++j)
        m += 0.25 * to_double(table(k, i, j)) * x[k - 1] / (x[i - 1] * x[j - 1]);
  return m;
}

}  // namespace detail

inline double scalar_curvature(const FlagSpace& space, const InvariantMetric& g) {
  detail::require_size(space, g.size());
  const double direct = scalar_closed_form<double>(space, g.x());
  const std::vector<double> r = ricci_closed_form<double>(space, g.x());
  double trace = 0.0;
  for (int k = 1; k <= space.s; ++k) trace += space.d(k) * r[k - 1];
  const double scale = detail::scalar_term_magnitude(space, g.x());
  if (std::fabs(direct - trace) > 1e-12 * scale)
    throw std::logic_error("scalar curvature routes disagree for '" + space.id + "'");
  return direct;
}

inline RicciComponents ricci_components(const FlagSpace& space, const InvariantMetric& g) {
  detail::require_size(space, g.size());
  return {ricci_closed_form<double>(space, g.x()), scalar_curvature(space, g)};
}

inline RicciComponents ricci_components_generic(std::span<const int> dims, const TripleTable& table,
                                                const InvariantMetric& g) {
  table.validate();
  if (g.size() != dims.size()) throw std::invalid_argument("ricci_components_generic: dimension mismatch");
  return {ricci_generic_form<double>(dims, table, g.x()), scalar_generic_form<double>(dims, table, g.x())};
}

/// max_{i,j} |r_i - r_j|; zero exactly for Einstein metrics.
inline double einstein_residual(const FlagSpace& space, const InvariantMetric& g) {
  const std::vector<double> r = ricci_closed_form<double>(space, g.x());
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  return *hi - *lo;
}

}  // namespace ricciflow
