#pragma once

#include "ricciflow/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace ricciflow {

/// Polynomial vector field in n variables with exact rational coefficients.
class PolyVectorField {
 public:
  PolyVectorField() = default;

  explicit PolyVectorField(std::vector<Polynomial> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("PolyVectorField: no components");
    const std::size_t n = components_.front().n_vars();
    for (const auto& c : components_) {
      if (c.n_vars() != n) throw std::invalid_argument("PolyVectorField: components disagree on variable count");
      if (!c.is_polynomial()) throw std::invalid_argument("PolyVectorField: component has negative exponents");
    }
    degree_ = 0;
    for (const auto& c : components_) degree_ = std::max(degree_, c.total_degree());
  }

  std::size_t n_vars() const { return components_.empty() ? 0 : components_.front().n_vars(); }
  std::size_t size() const { return components_.size(); }
  int degree() const { return degree_; }
  const Polynomial& operator[](std::size_t k) const { return components_.at(k); }
  const std::vector<Polynomial>& components() const { return components_; }

  std::vector<Rational> evaluate_exact(std::span<const Rational> point) const {
    check_point(point.size());
    std::vector<Rational> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(point));
    return out;
  }

  /// Exact evaluation at the binary64 point, rounded once at the end.
  std::vector<double> evaluate(std::span<const double> point) const {
    check_point(point.size());
    std::vector<Rational> q;
    q.reserve(point.size());
    for (double v : point) q.push_back(exact_rational(v));
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(to_double(c.evaluate(q)));
    return out;
  }

  /// Row k holds the partial derivatives of component k.
  std::vector<std::vector<Polynomial>> jacobian_polynomials() const {
    std::vector<std::vector<Polynomial>> J;
    J.reserve(components_.size());
    for (const auto& c : components_) {
      std::vector<Polynomial> row;
      row.reserve(n_vars());
      for (std::size_t j = 0; j < n_vars(); ++j) row.push_back(c.derivative(j));
      J.push_back(std::move(row));
    }
    return J;
  }

  Rational max_abs_coefficient() const {
    Rational best(0);
    for (const auto& c : components_) best = std::max(best, c.max_abs_coefficient());
    return best;
  }

  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

 private:
  void check_point(std::size_t n) const {
    if (n != n_vars()) throw std::invalid_argument("PolyVectorField: point dimension mismatch");
  }

  std::vector<Polynomial> components_;
  int degree_ = 0;
};

inline std::vector<double> evaluate(const PolyVectorField& field, std::span<const double> point) {
  return field.evaluate(point);
}

/// Long-double image of a field and its Jacobian, optionally divided by a
/// positive constant.
class NumericField {
 public:
  NumericField() = default;
  explicit NumericField(const PolyVectorField& field, const Rational& scale = Rational(1)) : n_(field.n_vars()) {
    if (scale <= 0) throw std::invalid_argument("NumericField: scale must be positive");
    for (const auto& c : field.components()) components_.emplace_back(c, scale);
    for (const auto& row : field.jacobian_polynomials()) {
      std::vector<NumericPolynomial> r;
      for (const auto& p : row) r.emplace_back(p, scale);
      jacobian_.push_back(std::move(r));
    }
  }

  std::size_t n_vars() const { return n_; }
  std::size_t size() const { return components_.size(); }

  std::vector<double> value(std::span<const double> x) const {
    std::vector<double> out(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) out[k] = static_cast<double>(components_[k].evaluate(x));
    return out;
  }

  /// Row-major Jacobian.
  std::vector<double> jacobian(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(components_.size() * n_);
    for (const auto& row : jacobian_)
      for (const auto& p : row) out.push_back(static_cast<double>(p.evaluate(x)));
    return out;
  }

  const NumericPolynomial& component(std::size_t k) const { return components_.at(k); }

 private:
  std::size_t n_ = 0;
  std::vector<NumericPolynomial> components_;
  std::vector<std::vector<NumericPolynomial>> jacobian_;
};

}  // namespace ricciflow
