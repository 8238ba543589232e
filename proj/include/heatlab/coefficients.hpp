#pragma once

// Closed-form heat content coefficients beta_0..beta_3 from boundary and
// interface traces.

#include "heatlab/constants.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/operator_model.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace heatlab {

/// Boundary-localized jets of phi and rho on one side at one point of a
/// boundary component. Normal derivatives use that side's inward normal;
/// tangential ones use the orthonormal frame. rho-derivatives use the dual connection.
struct SideJet {
  Eigen::VectorXd phi, rho;
  Eigen::VectorXd Dphi, Dtrho;
  Eigen::VectorXd dnu_phi, dnu_rho;
  std::vector<Eigen::VectorXd> dtan_phi, dtan_rho;
  Eigen::MatrixXd E;
  BoundaryGeometry geom;
};

/// One quadrature point of an outer boundary component (Dirichlet or Robin).
struct BoundaryTrace {
  ConditionKind kind = ConditionKind::Dirichlet;
  SideJet side;
  Eigen::MatrixXd S;
  double weight = 1.0;
};

/// One quadrature point of an interface.
struct InterfaceTrace {
  SideJet plus, minus;
  std::vector<Eigen::MatrixXd> omega_a;  // nabla_a^+ - nabla_a^-, orthonormal frame
  Eigen::MatrixXd U;
  Eigen::MatrixXd S_pp, S_pm, S_mp, S_mm;
  double weight = 1.0;
};

struct TermContribution {
  std::string label;   // constant name, or a descriptive label
  int order = 0;       // n in beta_n
  double invariant = 0.0;  // integrated invariant multiplying the constant
  double value = 0.0;      // contribution to beta_n
};

struct CoefficientSet {
  std::array<double, 4> beta{};
  std::array<double, 4> interior{};
  std::array<double, 4> boundary{};
  std::vector<TermContribution> terms;

  CoefficientSet& operator+=(const CoefficientSet& other);
};

/// beta_0 and beta_2 interior parts from quadrature samples of phi.rho and (D phi).rho
/// already weighted by the volume element.
CoefficientSet interior_set(double phi_rho, double Dphi_rho);

CoefficientSet beta_dr(const std::vector<BoundaryTrace>& traces);
CoefficientSet beta_b1(const std::vector<InterfaceTrace>& traces,
                       const ConstantTable& constants = ConstantTable::published());
CoefficientSet beta_b2(const std::vector<InterfaceTrace>& traces,
                       const ConstantTable& constants = ConstantTable::published());

/// Swap the roles of the two sides: plus <-> minus, omega_a -> -omega_a, S-blocks swapped.
InterfaceTrace swap_sides(const InterfaceTrace& t);

/// Exchange phi and rho and dualize (U -> U^T, S-blocks transposed and swapped,
/// omega_a -> -omega_a^T, E -> E^T).
InterfaceTrace adjoint_trace(const InterfaceTrace& t);

}  // namespace heatlab
