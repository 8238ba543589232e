#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <vector>

namespace heatlab {

/// Real polynomial c0 + c1 r + ... + cN r^N. Derivatives are exact.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly constant(double c);
  static Poly monomial(int power, double c = 1.0);

  double operator()(double r) const;
  Poly derivative(int order = 1) const;
  /// Antiderivative vanishing at r = 0.
  Poly antiderivative() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(double s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(Poly a) { return a *= -1.0; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<double> coeffs_;  // trailing zeros trimmed; empty means zero
};

/// Warping functions, potentials and coefficients on [0,1].
using SmoothFn1D = Poly;

/// Radial field component p(r) * exp(q(r)). Closed under differentiation.
class RadialFn {
 public:
  RadialFn() = default;
  RadialFn(Poly poly, Poly exponent = {}) : poly_(std::move(poly)), exponent_(std::move(exponent)) {}

  double operator()(double r) const;
  RadialFn derivative(int order = 1) const;

  const Poly& poly() const { return poly_; }
  const Poly& exponent() const { return exponent_; }
  bool is_zero() const { return poly_.is_zero(); }

 private:
  Poly poly_;
  Poly exponent_;
};

/// n x n matrix whose entries are polynomials in r.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(int n);

  static PolyMatrix zero(int n) { return PolyMatrix(n); }
  static PolyMatrix scalar(const Poly& p, int n);
  static PolyMatrix constant(const Eigen::MatrixXd& m);

  int dim() const { return n_; }
  Poly& at(int i, int j) { return entries_[static_cast<size_t>(i * n_ + j)]; }
  const Poly& at(int i, int j) const { return entries_[static_cast<size_t>(i * n_ + j)]; }

  Eigen::MatrixXd operator()(double r) const;
  PolyMatrix derivative() const;
  PolyMatrix transpose() const;
  bool is_zero() const;

  PolyMatrix& operator+=(const PolyMatrix& other);
  PolyMatrix& operator-=(const PolyMatrix& other);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& p, const PolyMatrix& m);
  friend PolyMatrix operator*(double s, const PolyMatrix& m);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  int n_ = 0;
  std::vector<Poly> entries_;
};

using FieldComponents = std::vector<RadialFn>;

Eigen::VectorXd evaluate(const FieldComponents& f, double r);
FieldComponents derivative(const FieldComponents& f, int order = 1);

}  // namespace heatlab
