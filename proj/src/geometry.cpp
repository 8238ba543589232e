#include "heatlab/geometry.hpp"

#include "heatlab/error.hpp"

#include <cmath>
#include <string>

namespace heatlab {

int normal_sign(BoundaryPoint p, Orientation o) {
  const int inward = p == BoundaryPoint::Start ? 1 : -1;
  return o == Orientation::Inward ? inward : -inward;
}

SmoothFn1D WarpedGeometry::total_warping() const {
  SmoothFn1D total;
  for (const auto& f : warpings) total += f;
  return total;
}

double WarpedGeometry::volume_density(double r) const { return std::exp(total_warping()(r)); }

void WarpedGeometry::validate(bool require_vanishing_ends) const {
  if (dim() > 2) throw PreconditionError("warped geometry supports at most two angular directions");
  if (!require_vanishing_ends) return;
  for (int a = 0; a < dim(); ++a) {
    const auto& f = warpings[static_cast<size_t>(a)];
    if (std::abs(f(0.0)) > 1e-14 || std::abs(f(1.0)) > 1e-14)
      throw PreconditionError("warping " + std::to_string(a + 1) + " does not vanish at the boundary");
  }
}

double radial_sectional_curvature(const WarpedGeometry& geom, int a, double r) {
  const auto& f = geom.warpings[static_cast<size_t>(a)];
  const double fr = f.derivative()(r);
  return -(f.derivative(2)(r) + fr * fr);
}

BoundaryGeometry boundary_geometry(const WarpedGeometry& geom, BoundaryPoint point, Orientation normal) {
  const int d = geom.dim();
  const double r = boundary_coordinate(point);
  const double s = normal_sign(point, normal);

  BoundaryGeometry bg;
  bg.at = point;
  bg.L = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    bg.L(a, a) = -s * geom.warpings[static_cast<size_t>(a)].derivative()(r);
    bg.R_amma_trace += radial_sectional_curvature(geom, a, r);
  }
  bg.L_trace = bg.L.trace();
  bg.L_norm2 = bg.L.squaredNorm();
  bg.R_ijji = scalar_curvature(geom, point, normal);
  return bg;
}

double scalar_curvature(const WarpedGeometry& geom, BoundaryPoint point, Orientation) {
  const double r = boundary_coordinate(point);
  double sum = 0.0;
  for (int a = 0; a < geom.dim(); ++a) sum += radial_sectional_curvature(geom, a, r);
  // plane spanned by theta_1, theta_2
  if (geom.dim() == 2) sum += -geom.warpings[0].derivative()(r) * geom.warpings[1].derivative()(r);
  return 2.0 * sum;
}

void validate_gluing(const WarpedGeometry& plus, const WarpedGeometry& minus, BoundaryPoint point,
                     double tolerance) {
  if (plus.dim() != minus.dim())
    throw PreconditionError("glued sides must have the same number of angular directions");
  const double r = boundary_coordinate(point);
  for (int a = 0; a < plus.dim(); ++a) {
    const double gp = std::exp(2.0 * plus.warpings[static_cast<size_t>(a)](r));
    const double gm = std::exp(2.0 * minus.warpings[static_cast<size_t>(a)](r));
    if (std::abs(gp - gm) > tolerance)
      throw PreconditionError("induced metrics disagree on the interface at r=" + std::to_string(r));
  }
}

}  // namespace heatlab
