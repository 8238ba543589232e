#pragma once

// Laplace-type operators D = -(Tr(nabla^2) + E) on one side of a warped product,
// the dual operator, fields, and the four boundary-condition families.

#include "heatlab/geometry.hpp"
#include "heatlab/polynomial.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace heatlab {

/// Natural form: radial connection 1-form omega_r(r), constant angular
/// connection components omega_theta[a] (coordinate frame), endomorphism E(r).
struct LaplaceData {
  int fiber_dim = 1;
  WarpedGeometry geom;
  PolyMatrix omega_r;
  PolyMatrix E;
  std::vector<Eigen::MatrixXd> omega_theta;  // empty, or one per angular direction

  static LaplaceData scalar_laplacian(WarpedGeometry geom, int fiber_dim = 1);

  Eigen::MatrixXd omega_theta_at(int a) const;
  bool has_angular_connection() const;
  /// Throws PreconditionError on inconsistent dimensions.
  void validate() const;
};

/// The dual operator on V*: connection -omega^T, endomorphism E^T.
using DualLaplaceData = LaplaceData;

/// Symbol form D = -(g^{uv} d_u d_v + A^r d_r + sum_a A^a d_a + B).
struct SymbolData {
  PolyMatrix A_r;
  std::vector<Eigen::MatrixXd> A_theta;  // constant; only on directions with zero warping
  PolyMatrix B;
};

LaplaceData symbol_to_natural(const SymbolData& symbol, const WarpedGeometry& geom, int fiber_dim);
SymbolData natural_to_symbol(const LaplaceData& op);
DualLaplaceData dualize(const LaplaceData& op);

/// Angular dependence prod_a cos(k_a theta_a), shared by phi, rho and u.
using AngularMode = std::vector<int>;

/// Value and partial derivatives of a field at (r, theta).
struct PointJet {
  Eigen::VectorXd value, dr, drr;
  std::vector<Eigen::VectorXd> dth, dthth;
};

PointJet field_jet(const FieldComponents& f, const AngularMode& mode, double r, const std::vector<double>& theta);

/// D applied to the field described by `jet` at radius r.
Eigen::VectorXd apply_operator(const LaplaceData& op, const PointJet& jet, double r);
/// nabla_r (coordinate direction d/dr).
Eigen::VectorXd radial_derivative(const LaplaceData& op, const PointJet& jet, double r);
/// nabla_a in the orthonormal frame e^{-f_a} d_a.
Eigen::VectorXd tangential_derivative(const LaplaceData& op, const PointJet& jet, double r, int a);

struct SidedField {
  FieldComponents plus;
  FieldComponents minus;
};

enum class ConditionKind { Dirichlet, Robin, Transmittal, Transmission };

std::string to_string(ConditionKind kind);

/// A boundary component is "0+" / "1+" / "0-" / "1-" (one side's end), or "0" / "1"
/// for an interface gluing both sides at that coordinate.
struct ConditionSpec {
  ConditionKind kind = ConditionKind::Dirichlet;
  std::string at;
  Eigen::MatrixXd S;  // Robin
  Eigen::MatrixXd U;  // Transmittal
  Eigen::MatrixXd S_pp, S_pm, S_mp, S_mm;  // Transmission

  bool is_interface() const { return kind == ConditionKind::Transmittal || kind == ConditionKind::Transmission; }
  BoundaryPoint point() const;
  /// +1 for the plus side, -1 for the minus side, 0 for an interface.
  int side_sign() const;
  /// Throws PreconditionError on missing or misshaped matrices.
  void validate(int n_plus, int n_minus) const;
};

/// Residual B(phi) at the component, evaluated at angle theta. One vector for
/// Dirichlet/Robin, two for interfaces. Normal derivatives are covariant and inward.
std::vector<Eigen::VectorXd> apply_condition(const ConditionSpec& cond, const SidedField& phi,
                                             const LaplaceData& plus, const LaplaceData* minus,
                                             const AngularMode& mode = {},
                                             const std::vector<double>& theta = {});

/// Imperfect-contact transmission (continuous flux, flux proportional to the jump).
ConditionSpec transmission_from_physics(double K_plus, double K_minus, double H, const std::string& at);

/// Condition for the dual problem making the Green pairing vanish.
ConditionSpec dual_condition(const ConditionSpec& cond);

}  // namespace heatlab
