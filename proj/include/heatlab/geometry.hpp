#pragma once

// Warped products [0,1] x T^d with metric dr^2 + sum_a exp(2 f_a(r)) dtheta_a^2,
// d in {0,1,2}, and the boundary tensors the heat content formulas consume.
// Every circle factor has circumference 2*pi.

#include "heatlab/polynomial.hpp"

#include <Eigen/Dense>

#include <vector>

namespace heatlab {

enum class BoundaryPoint { Start = 0, End = 1 };
enum class Orientation { Inward, Outward };

inline double boundary_coordinate(BoundaryPoint p) { return p == BoundaryPoint::Start ? 0.0 : 1.0; }

/// +1 if the chosen unit normal is +d/dr, -1 if it is -d/dr.
int normal_sign(BoundaryPoint p, Orientation o = Orientation::Inward);

struct WarpedGeometry {
  std::vector<SmoothFn1D> warpings;  // f_1 .. f_d

  int dim() const { return static_cast<int>(warpings.size()); }
  /// F = sum_a f_a; the Riemannian volume density is exp(F).
  SmoothFn1D total_warping() const;
  double volume_density(double r) const;

  /// Throws PreconditionError if d > 2, or (when required) a warping does not
  /// vanish at r = 0 and r = 1.
  void validate(bool require_vanishing_ends = false) const;

  static WarpedGeometry interval() { return {}; }
};

/// Boundary tensors in an orthonormal tangent frame. L is the second
/// fundamental form with respect to the selected normal.
struct BoundaryGeometry {
  Eigen::MatrixXd L;
  double L_trace = 0.0;        // L_aa
  double L_norm2 = 0.0;        // L_ab L_ab
  double R_amma_trace = 0.0;   // sum_a R_{a m m a}
  double R_ijji = 0.0;         // scalar curvature, R_1221 = +1 on the unit sphere
  BoundaryPoint at = BoundaryPoint::Start;
};

BoundaryGeometry boundary_geometry(const WarpedGeometry& geom, BoundaryPoint point,
                                   Orientation normal = Orientation::Inward);

double scalar_curvature(const WarpedGeometry& geom, BoundaryPoint point,
                        Orientation normal = Orientation::Inward);

/// Sectional curvature of the (r, theta_a) plane: -(f_a'' + f_a'^2).
double radial_sectional_curvature(const WarpedGeometry& geom, int a, double r);

/// Two sides glued at `point` must induce the same metric there.
void validate_gluing(const WarpedGeometry& plus, const WarpedGeometry& minus, BoundaryPoint point,
                     double tolerance = 1e-12);

}  // namespace heatlab
