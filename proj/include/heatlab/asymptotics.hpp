#pragma once

// Least-squares extraction of beta_0..beta_n from sampled heat content in the
// half-power basis {t^{k/2}}.

#include "heatlab/coefficients.hpp"
#include "heatlab/solver.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace heatlab {

struct FitResult {
  Eigen::VectorXd coefficients;  // beta_0 .. beta_{n_terms}
  Eigen::VectorXd sensitivity;   // largest change under leave-one-out and shrunk windows
  double t_min = 0.0;
  double t_max = 0.0;
  double condition_number = 0.0;  // of the column-scaled weighted design matrix
  double residual = 0.0;          // weighted residual norm
};

/// Weighted least squares with row weights t^{-1/2}. Needs at least
/// 2*n_terms samples spanning two decades; throws NumericError on a
/// rank-deficient design.
FitResult fit_half_powers(const HeatContentSamples& samples, int n_terms);

/// Pass when |fitted - theory| <= max(rel * |theory|, abs).
struct Tolerance {
  double rel = 0.0;
  double abs = 0.0;
};

struct Verdict {
  int order = 0;
  double theory = 0.0;
  double fitted = 0.0;
  double residual = 0.0;
  Tolerance tolerance;
  bool pass = false;
};

std::vector<Verdict> compare(const FitResult& fit, const CoefficientSet& theory,
                             const std::vector<Tolerance>& tolerances);
bool all_pass(const std::vector<Verdict>& verdicts);

}  // namespace heatlab
