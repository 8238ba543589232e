#include "heatlab/asymptotics.hpp"

#include "heatlab/error.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace heatlab {
namespace {

struct RawFit {
  Eigen::VectorXd c;
  double cond = 0.0;
  double residual = 0.0;
};

RawFit solve(const std::vector<double>& t, const std::vector<double>& y, int n_terms) {
  const auto rows = static_cast<Eigen::Index>(t.size());
  const Eigen::Index cols = n_terms + 1;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double ti = t[static_cast<size_t>(i)];
    const double w = 1.0 / std::sqrt(ti);
    for (Eigen::Index k = 0; k < cols; ++k) A(i, k) = w * std::pow(ti, 0.5 * static_cast<double>(k));
    rhs(i) = w * y[static_cast<size_t>(i)];
  }
  const Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index k = 0; k < cols; ++k) A.col(k) /= scale(k);

  RawFit f;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const Eigen::VectorXd sv = svd.singularValues();
  f.cond = sv(0) / sv(sv.size() - 1);
  if (!(sv(sv.size() - 1) > 0.0) || f.cond > 1e13)
    throw NumericError("rank-deficient design matrix; widen the time window");
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  const Eigen::VectorXd z = qr.solve(rhs);
  f.residual = (A * z - rhs).norm();
  f.c = z.cwiseQuotient(scale);
  return f;
}

}  // namespace

FitResult fit_half_powers(const HeatContentSamples& samples, int n_terms) {
  if (n_terms < 1) throw PreconditionError("n_terms must be at least 1");
  if (samples.times.size() != samples.values.size()) throw PreconditionError("times and values differ in length");
  if (static_cast<int>(samples.times.size()) < 2 * n_terms)
    throw PreconditionError("need at least 2*n_terms samples");
  std::vector<size_t> order(samples.times.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return samples.times[a] < samples.times[b]; });
  std::vector<double> t, y;
  for (size_t i : order) {
    if (!(samples.times[i] > 0.0)) throw PreconditionError("sample times must be positive");
    if (!std::isfinite(samples.values[i])) throw NumericError("non-finite heat content sample");
    t.push_back(samples.times[i]);
    y.push_back(samples.values[i]);
  }
  if (t.back() < 100.0 * t.front()) throw PreconditionError("sample times must span two decades");

  const RawFit full = solve(t, y, n_terms);
  FitResult out;
  out.coefficients = full.c;
  out.condition_number = full.cond;
  out.residual = full.residual;
  out.t_min = t.front();
  out.t_max = t.back();
  out.sensitivity = Eigen::VectorXd::Zero(full.c.size());

  auto absorb = [&](const std::vector<double>& ts, const std::vector<double>& ys) {
    if (static_cast<int>(ts.size()) <= n_terms + 1) return;
    try {
      const RawFit f = solve(ts, ys, n_terms);
      out.sensitivity = out.sensitivity.cwiseMax((f.c - full.c).cwiseAbs());
    } catch (const NumericError&) {
    }
  };
  for (size_t skip = 0; skip < t.size(); ++skip) {
    std::vector<double> ts, ys;
    for (size_t i = 0; i < t.size(); ++i)
      if (i != skip) {
        ts.push_back(t[i]);
        ys.push_back(y[i]);
      }
    absorb(ts, ys);
  }
  for (size_t drop = 1; drop <= 2; ++drop) {
    absorb({t.begin() + static_cast<long>(drop), t.end()}, {y.begin() + static_cast<long>(drop), y.end()});
    absorb({t.begin(), t.end() - static_cast<long>(drop)}, {y.begin(), y.end() - static_cast<long>(drop)});
  }
  return out;
}

std::vector<Verdict> compare(const FitResult& fit, const CoefficientSet& theory,
                             const std::vector<Tolerance>& tolerances) {
  std::vector<Verdict> out;
  const int n = static_cast<int>(std::min<size_t>({tolerances.size(), theory.beta.size(),
                                                   static_cast<size_t>(fit.coefficients.size())}));
  for (int k = 0; k < n; ++k) {
    Verdict v;
    v.order = k;
    v.theory = theory.beta[static_cast<size_t>(k)];
    v.fitted = fit.coefficients(k);
    v.residual = v.fitted - v.theory;
    v.tolerance = tolerances[static_cast<size_t>(k)];
    v.pass = std::abs(v.residual) <= std::max(v.tolerance.rel * std::abs(v.theory), v.tolerance.abs);
    out.push_back(v);
  }
  return out;
}

bool all_pass(const std::vector<Verdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

}  // namespace heatlab
