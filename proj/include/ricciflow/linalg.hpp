#pragma once

// Small dense matrices (n <= 3 in practice): linear solves and eigenvalues
// through the characteristic polynomial.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ricciflow {

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  Matrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw std::invalid_argument("Matrix: data size mismatch");
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("Matrix::from_rows: not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(Matrix A, std::vector<double> b) {
  const std::size_t n = A.size();
  if (b.size() != n) throw std::invalid_argument("solve_linear: size mismatch");
  const double scale = std::max(A.frobenius_norm(), 1e-300);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(A(r, c)) > std::fabs(A(piv, c))) piv = r;
    if (std::fabs(A(piv, c)) <= 1e-15 * scale) throw SingularMatrix("solve_linear: matrix is numerically singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(c, j), A(piv, j));
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = A(r, c) / A(c, c);
      for (std::size_t j = c; j < n; ++j) A(r, j) -= f * A(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

namespace detail {

inline std::vector<std::complex<double>> quadratic_roots(double b, double c) {
  // t^2 + b t + c = 0, computed without cancellation.
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
    return {{q, 0.0}, {c / q, 0.0}};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {{-0.5 * b, im}, {-0.5 * b, -im}};
}

inline std::vector<std::complex<double>> cubic_roots(double a, double b, double c) {
  // t^3 + a t^2 + b t + c = 0
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  auto polish = [&](double t) {
    for (int it = 0; it < 3; ++it) {
      const double f = ((t + a) * t + b) * t + c;
      const double df = (3.0 * t + 2.0 * a) * t + b;
      if (df == 0.0) break;
      t -= f / df;
    }
    return t;
  };
  if (p < 0.0 && disc <= 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::vector<std::complex<double>> out;
    for (int k = 0; k < 3; ++k)
      out.emplace_back(polish(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0), 0.0);
    return out;
  }
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double u = std::cbrt(-0.5 * q + sq);
  const double v = std::cbrt(-0.5 * q - sq);
  const double r = polish(u + v - a / 3.0);
  // Deflate: (t - r)(t^2 + e t + f)
  const double e = a + r;
  const double f = b + e * r;
  std::vector<std::complex<double>> out{{r, 0.0}};
  for (auto z : quadratic_roots(e, f)) out.push_back(z);
  return out;
}

}  // namespace detail

/// Eigenvalues of a 1x1, 2x2 or 3x3 matrix. The 3x3 case solves the
/// characteristic cubic and checks each root against it.
inline std::vector<std::complex<double>> eigenvalues(const Matrix& A) {
  const std::size_t n = A.size();
  if (n == 1) return {{A(0, 0), 0.0}};
  if (n == 2) return detail::quadratic_roots(-A.trace(), A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0));
  if (n != 3) throw std::invalid_argument("eigenvalues: only sizes 1 to 3 are supported");
  const double tr = A.trace();
  const double minors = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) + A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0) +
                        A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
  const double det = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
                     A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                     A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
  auto roots = detail::cubic_roots(-tr, minors, -det);
  const double scale = std::max(1.0, A.frobenius_norm());
  for (const auto& z : roots) {
    const std::complex<double> res = ((z - tr) * z + minors) * z - det;
    if (std::abs(res) > 1e-9 * scale * scale * scale)
      throw std::runtime_error("eigenvalues: characteristic cubic residual too large");
  }
  return roots;
}

}  // namespace ricciflow
