#pragma once

// Sparse multivariate Laurent polynomials with exact rational coefficients.
//
// Exponents may be negative so that curvature expressions such as
// x2 / x1^2 can be built directly; `is_polynomial()` tells whether every
// exponent is non-negative. Terms with zero coefficient are never stored.

#include "ricciflow/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ricciflow {

using Exponents = std::vector<int>;

class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t n_vars) : n_vars_(n_vars) {}

  static Polynomial constant(std::size_t n_vars, const Rational& c) {
    Polynomial p(n_vars);
    p.add_term(Exponents(n_vars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t n_vars, std::size_t k) {
    if (k >= n_vars) throw std::out_of_range("Polynomial::variable: index out of range");
    Exponents e(n_vars, 0);
    e[k] = 1;
    return monomial(std::move(e), Rational(1));
  }

  static Polynomial monomial(Exponents e, const Rational& c) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, const Rational& c) {
    if (e.size() != n_vars_) throw std::invalid_argument("Polynomial::add_term: exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
      return std::all_of(t.first.begin(), t.first.end(), [](int v) { return v >= 0; });
    });
  }

  bool is_monomial() const { return terms_.size() == 1; }

  /// Largest total degree over the stored terms; 0 for the zero polynomial.
  int total_degree() const {
    int best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const int deg = std::accumulate(e.begin(), e.end(), 0);
      if (first || deg > best) best = deg;
      first = false;
    }
    return best;
  }

  int min_exponent(std::size_t k) const {
    check_index(k);
    int best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[k] < best) best = e[k];
      first = false;
    }
    return best;
  }

  int max_exponent(std::size_t k) const {
    check_index(k);
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[k]);
    return best;
  }

  /// True iff every term carries x_k to a positive power (the zero polynomial qualifies).
  bool divisible_by_variable(std::size_t k) const {
    check_index(k);
    return std::all_of(terms_.begin(), terms_.end(), [k](const auto& t) { return t.first[k] >= 1; });
  }

  /// Multiply by the Laurent monomial x^shift.
  Polynomial shifted(const Exponents& shift) const {
    if (shift.size() != n_vars_) throw std::invalid_argument("Polynomial::shifted: length mismatch");
    Polynomial out(n_vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      for (std::size_t i = 0; i < n_vars_; ++i) f[i] += shift[i];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// Exact quotient by x_k; throws if some term lacks the factor.
  Polynomial divided_by_variable(std::size_t k) const {
    if (!divisible_by_variable(k)) throw std::domain_error("Polynomial: not divisible by the requested variable");
    Exponents shift(n_vars_, 0);
    shift[k] = -1;
    return shifted(shift);
  }

  Polynomial derivative(std::size_t k) const {
    check_index(k);
    Polynomial out(n_vars_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponents f = e;
      f[k] -= 1;
      out.add_term(std::move(f), c * e[k]);
    }
    return out;
  }

  /// Set x_k = 0. Requires no negative powers of x_k. Keeps the variable count.
  Polynomial with_variable_zero(std::size_t k) const {
    check_index(k);
    Polynomial out(n_vars_);
    for (const auto& [e, c] : terms_) {
      if (e[k] < 0) throw std::domain_error("Polynomial::with_variable_zero: negative power of the variable");
      if (e[k] == 0) out.terms_.emplace(e, c);
    }
    return out;
  }

  /// Remove variable k, which must not occur in any term.
  Polynomial without_variable(std::size_t k) const {
    check_index(k);
    Polynomial out(n_vars_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[k] != 0) throw std::domain_error("Polynomial::without_variable: variable still present");
      Exponents f;
      f.reserve(n_vars_ - 1);
      for (std::size_t i = 0; i < n_vars_; ++i)
        if (i != k) f.push_back(e[i]);
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// Substitute x_i -> images[i]. Negative powers require a monomial image.
  Polynomial compose(const std::vector<Polynomial>& images) const;

  Rational evaluate(std::span<const Rational> point) const {
    check_point(point.size());
    // Power tables per variable, then one product per term.
    std::vector<std::map<int, Rational>> powers(n_vars_);
    auto power = [&](std::size_t i, int k) -> const Rational& {
      auto it = powers[i].find(k);
      if (it != powers[i].end()) return it->second;
      Rational v(1);
      const Rational base = k >= 0 ? point[i] : reciprocal(point[i]);
      for (int j = 0; j < std::abs(k); ++j) v *= base;
      return powers[i].emplace(k, std::move(v)).first->second;
    };
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < n_vars_; ++i)
        if (e[i] != 0) term *= power(i, e[i]);
      sum += term;
    }
    return sum;
  }

  Rational max_abs_coefficient() const {
    Rational best(0);
    for (const auto& [e, c] : terms_) best = std::max(best, Rational(boost::multiprecision::abs(c)));
    return best;
  }

  Polynomial operator-() const {
    Polynomial out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial out(a.n_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.n_vars_);
        for (std::size_t i = 0; i < a.n_vars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest total degree first reads more naturally.
    std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
      return std::accumulate(l.first.begin(), l.first.end(), 0) > std::accumulate(r.first.begin(), r.first.end(), 0);
    });
    for (const auto& [e, c] : ordered) {
      const bool negative = c < 0;
      os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
      const Rational mag = negative ? Rational(-c) : c;
      const bool unit = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
      if (mag != 1 || unit) os << ricciflow::to_string(mag);
      bool need_star = mag != 1;
      for (std::size_t i = 0; i < n_vars_; ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << "*";
        os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (e[i] != 1) os << "^" << e[i];
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void check_index(std::size_t k) const {
    if (k >= n_vars_) throw std::out_of_range("Polynomial: variable index out of range");
  }
  void check_point(std::size_t n) const {
    if (n != n_vars_) throw std::invalid_argument("Polynomial: point dimension mismatch");
  }
  void check_compatible(const Polynomial& o) const {
    if (o.n_vars_ != n_vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  }

  std::size_t n_vars_ = 0;
  TermMap terms_;
};

inline Polynomial lift(const Rational& q, const Polynomial& like) { return Polynomial::constant(like.n_vars(), q); }

/// Inverse of a Laurent monomial.
inline Polynomial reciprocal(const Polynomial& p) {
  if (!p.is_monomial()) throw std::domain_error("reciprocal: only monomials are invertible");
  const auto& [e, c] = *p.terms().begin();
  Exponents inv(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
  return Polynomial::monomial(std::move(inv), Rational(1) / c);
}

inline Polynomial pow(const Polynomial& base, int k) {
  if (k < 0) return pow(reciprocal(base), -k);
  Polynomial out = Polynomial::constant(base.n_vars(), Rational(1));
  Polynomial b = base;
  while (k > 0) {
    if (k & 1) out = out * b;
    k >>= 1;
    if (k > 0) b = b * b;
  }
  return out;
}

inline Polynomial Polynomial::compose(const std::vector<Polynomial>& images) const {
  if (images.size() != n_vars_) throw std::invalid_argument("Polynomial::compose: need one image per variable");
  if (images.empty()) return *this;
  const std::size_t m = images.front().n_vars();
  for (const auto& img : images)
    if (img.n_vars() != m) throw std::invalid_argument("Polynomial::compose: images disagree on variable count");
  std::vector<std::map<int, Polynomial>> cache(n_vars_);
  auto power = [&](std::size_t i, int k) -> const Polynomial& {
    auto it = cache[i].find(k);
    if (it != cache[i].end()) return it->second;
    return cache[i].emplace(k, ricciflow::pow(images[i], k)).first->second;
  };
  Polynomial out(m);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(m, c);
    for (std::size_t i = 0; i < n_vars_; ++i)
      if (e[i] != 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

/// Floating-point image of a polynomial for hot loops (Newton, ODE right-hand sides).
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const Polynomial& p, const Rational& scale = Rational(1)) : n_vars_(p.n_vars()) {
    if (!p.is_polynomial()) throw std::domain_error("NumericPolynomial: Laurent terms are not supported");
    for (const auto& [e, c] : p.terms()) {
      terms_.push_back({to_long_double(c / scale), e});
      for (std::size_t i = 0; i < e.size(); ++i) max_power_ = std::max(max_power_, e[i]);
    }
  }

  std::size_t n_vars() const { return n_vars_; }

  long double evaluate(std::span<const double> x) const {
    if (x.size() != n_vars_) throw std::invalid_argument("NumericPolynomial: point dimension mismatch");
    long double sum = 0.0L;
    for (const auto& t : terms_) {
      long double v = t.coefficient;
      for (std::size_t i = 0; i < n_vars_; ++i)
        for (int j = 0; j < t.exponents[i]; ++j) v *= x[i];
      sum += v;
    }
    return sum;
  }

  /// Sum of absolute term values: the natural scale for round-off in `evaluate`.
  long double magnitude(std::span<const double> x) const {
    long double sum = 0.0L;
    for (const auto& t : terms_) {
      long double v = std::fabs(t.coefficient);
      for (std::size_t i = 0; i < n_vars_; ++i)
        for (int j = 0; j < t.exponents[i]; ++j) v *= std::fabs(x[i]);
      sum += v;
    }
    return sum;
  }

 private:
  struct Term {
    long double coefficient;
    Exponents exponents;
  };
  std::size_t n_vars_ = 0;
  int max_power_ = 0;
  std::vector<Term> terms_;
};

}  // namespace ricciflow
