#pragma once

// Ground-truth heat content beta(t) = int u(t).rho for the model problems.
//
// Each side is discretized in r by continuous Galerkin elements (one
// high-degree spectral element by default, or piecewise-linear elements with a
// lumped mass for the second-order scheme). The angular dependence is a single
// cosine mode, so the problem reduces to a radial system per side.

#include "heatlab/problem.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace heatlab {

enum class Scheme { Spectral, FD2 };

struct Discretization {
  Scheme scheme = Scheme::Spectral;
  int resolution = 256;  // polynomial degree (spectral) or cell count (fd2), per side
  int extra_quadrature = 40;

  static Discretization spectral(int degree) { return {Scheme::Spectral, degree, 40}; }
  static Discretization fd2(int cells) { return {Scheme::FD2, cells, 40}; }
};

/// Generalized system M u' = -K u with initial data M u(0) = g and pairing b.u.
struct AssembledProblem {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  Eigen::VectorXd g;
  Eigen::VectorXd b;
  double angular_factor = 1.0;
  bool symmetric = false;
  bool gauged = false;            // a scalar gauge removed the symmetric part of omega_r
  std::vector<double> node_r;     // radius of each unknown
  std::vector<int> node_side;     // side of each unknown (0 plus, 1 minus; shared nodes report 0)
  std::vector<int> node_component;
};

/// Throws ConfigError for an ill-posed condition set, PreconditionError for a
/// resolution below the minimum.
AssembledProblem assemble(const Problem& problem, const Discretization& disc);

struct HeatContentSamples {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> errors;
  std::string method;
};

/// Spectral sum over the generalized eigenpairs. Throws PreconditionError when K
/// is not symmetric.
HeatContentSamples heat_content_eigen(const AssembledProblem& a, const std::vector<double>& times);

/// Crank-Nicolson with an implicit-Euler start, `steps` steps between
/// consecutive sample times, Richardson-extrapolated against 2*steps.
HeatContentSamples heat_content_timestep(const AssembledProblem& a, const std::vector<double>& times,
                                         int steps = 48);

enum class Route { Auto, Eigen, Timestep };
std::string to_string(Route r);

/// Assemble and evaluate; Auto picks the eigen route when K is symmetric.
HeatContentSamples simulate(const Problem& problem, const Discretization& disc,
                            const std::vector<double>& times, Route route = Route::Auto, int steps = 48);

/// Geometric grid t_j = t_max * ratio^j, decreasing.
std::vector<double> geometric_times(double t_max, double ratio, int count);
/// Default sample times for coefficient fits.
std::vector<double> default_times();

/// Smallest `count` generalized eigenvalues (symmetric K only).
Eigen::VectorXd lowest_eigenvalues(const AssembledProblem& a, int count);

/// M^{-1} K applied to nodal values (the discrete operator).
Eigen::VectorXd apply_discrete(const AssembledProblem& a, const Eigen::VectorXd& nodal);

}  // namespace heatlab
