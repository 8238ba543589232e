#include "heatlab/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace heatlab {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::constant(double c) { return Poly(std::vector<double>{c}); }

Poly Poly::monomial(int power, double c) {
  std::vector<double> v(static_cast<size_t>(power) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly::operator()(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

Poly Poly::derivative(int order) const {
  Poly p = *this;
  for (int o = 0; o < order; ++o) {
    if (p.coeffs_.size() <= 1) return Poly{};
    std::vector<double> d(p.coeffs_.size() - 1);
    for (size_t k = 1; k < p.coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * p.coeffs_[k];
    p = Poly(std::move(d));
  }
  return p;
}

Poly Poly::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Poly(std::move(a));
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

double RadialFn::operator()(double r) const {
  if (poly_.is_zero()) return 0.0;
  return exponent_.is_zero() ? poly_(r) : poly_(r) * std::exp(exponent_(r));
}

RadialFn RadialFn::derivative(int order) const {
  RadialFn f = *this;
  for (int o = 0; o < order; ++o) f = RadialFn(f.poly_.derivative() + f.poly_ * f.exponent_.derivative(), f.exponent_);
  return f;
}

PolyMatrix::PolyMatrix(int n) : n_(n), entries_(static_cast<size_t>(n * n)) {}

PolyMatrix PolyMatrix::scalar(const Poly& p, int n) {
  PolyMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = p;
  return m;
}

PolyMatrix PolyMatrix::constant(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols()) throw std::invalid_argument("PolyMatrix::constant: matrix must be square");
  PolyMatrix m(static_cast<int>(c.rows()));
  for (int i = 0; i < m.n_; ++i)
    for (int j = 0; j < m.n_; ++j) m.at(i, j) = Poly::constant(c(i, j));
  return m;
}

Eigen::MatrixXd PolyMatrix::operator()(double r) const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = at(i, j)(r);
  return m;
}

PolyMatrix PolyMatrix::derivative() const {
  PolyMatrix d(n_);
  for (size_t k = 0; k < entries_.size(); ++k) d.entries_[k] = entries_[k].derivative();
  return d;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t.at(i, j) = at(j, i);
  return t;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : entries_)
    if (!p.is_zero()) return false;
  return true;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
  PolyMatrix c(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j)
      for (int k = 0; k < a.n_; ++k) c.at(i, j) += a.at(i, k) * b.at(k, j);
  return c;
}

PolyMatrix operator*(const Poly& p, const PolyMatrix& m) {
  PolyMatrix c(m.n_);
  for (size_t k = 0; k < m.entries_.size(); ++k) c.entries_[k] = p * m.entries_[k];
  return c;
}

PolyMatrix operator*(double s, const PolyMatrix& m) {
  PolyMatrix c = m;
  for (auto& e : c.entries_) e *= s;
  return c;
}

Eigen::VectorXd evaluate(const FieldComponents& f, double r) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (size_t i = 0; i < f.size(); ++i) v(static_cast<Eigen::Index>(i)) = f[i](r);
  return v;
}

FieldComponents derivative(const FieldComponents& f, int order) {
  FieldComponents d;
  d.reserve(f.size());
  for (const auto& c : f) d.push_back(c.derivative(order));
  return d;
}

}  // namespace heatlab
