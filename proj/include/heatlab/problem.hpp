#pragma once

// A one- or two-sided model problem: operators, fields, and a condition on
// every boundary component. Two sides are glued at r=0 and/or r=1.

#include "heatlab/coefficients.hpp"
#include "heatlab/operator_model.hpp"

#include <string>
#include <vector>

namespace heatlab {

struct Side {
  LaplaceData op;
  FieldComponents phi;
  FieldComponents rho;
};

struct Problem {
  std::vector<Side> sides;  // [plus] or [plus, minus]
  std::vector<ConditionSpec> conditions;
  AngularMode mode;         // empty means all zero

  int angular_dim() const { return sides.empty() ? 0 : sides.front().op.geom.dim(); }
  AngularMode effective_mode() const;
  /// Product over angular directions of the integral of cos^2(k theta).
  double angular_factor() const;
  bool two_sided() const { return sides.size() == 2; }

  /// Throws ConfigError for an ill-posed condition set, PreconditionError otherwise.
  void validate() const;

  /// Normalizes one-sided component names ("0" -> "0+").
  const ConditionSpec* condition_at(BoundaryPoint p, int side_sign) const;
};

/// Traces on every boundary component, sampled on a tensor grid in theta.
struct ProblemTraces {
  std::vector<BoundaryTrace> boundary;
  std::vector<InterfaceTrace> transmittal;
  std::vector<InterfaceTrace> transmission;
};

ProblemTraces build_traces(const Problem& problem);

/// beta_0 and beta_2 interior parts by quadrature.
CoefficientSet beta_interior(const Problem& problem);

/// Interior plus all boundary and interface contributions.
CoefficientSet evaluate(const Problem& problem, const ConstantTable& constants = ConstantTable::published());

/// Dual problem: operators dualized, conditions dualized, phi and rho exchanged.
Problem dual_problem(const Problem& problem);

/// Adds eps * Id to every side's endomorphism.
Problem shift_endomorphism(const Problem& problem, double eps);

}  // namespace heatlab
