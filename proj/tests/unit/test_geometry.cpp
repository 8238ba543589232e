#include "heatlab/error.hpp"
#include "heatlab/geometry.hpp"

#include <gtest/gtest.h>

#include <array>
#include <functional>
#include <cmath>

using namespace heatlab;

namespace {

// Riemann tensor of a diagonal metric g(r) on (r, theta_1, .., theta_d) built
// from finite-difference Christoffel symbols; R(X,Y)Z = [nabla_X, nabla_Y]Z.
struct NumericCurvature {
  static constexpr int N = 3;
  int n;
  std::function<std::array<double, N>(double)> metric;  // diagonal entries

  using Gamma = std::array<std::array<std::array<double, N>, N>, N>;  // G[i][j][k] = Gamma^i_jk

  Gamma christoffel(double r, double h = 1e-5) const {
    const auto g = metric(r);
    const auto gp = metric(r + h), gm = metric(r - h);
    Gamma G{};
    // only d/dr of g is nonzero
    auto dg = [&](int i) { return (gp[i] - gm[i]) / (2 * h); };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          // Gamma^i_jk = 1/2 g^ii (d_j g_ik + d_k g_ij - d_i g_jk)
          double s = 0.0;
          if (j == 0 && i == k) s += dg(i);
          if (k == 0 && i == j) s += dg(i);
          if (i == 0 && j == k) s -= dg(j);
          G[i][j][k] = 0.5 * s / g[i];
        }
    return G;
  }

  /// R^i_{jkl}
  double riemann(int i, int j, int k, int l, double r, double h = 1e-4) const {
    const Gamma G = christoffel(r), Gp = christoffel(r + h), Gm = christoffel(r - h);
    auto d = [&](int dir, int a, int b, int c) {
      return dir == 0 ? (Gp[a][b][c] - Gm[a][b][c]) / (2 * h) : 0.0;
    };
    double v = d(k, i, l, j) - d(l, i, k, j);
    for (int m = 0; m < n; ++m) v += G[i][k][m] * G[m][l][j] - G[i][l][m] * G[m][k][j];
    return v;
  }

  double sectional(int a, int b, double r) const {
    const auto g = metric(r);
    return g[a] * riemann(a, b, a, b, r) / (g[a] * g[b]);
  }

  double scalar(double r) const {
    const auto g = metric(r);
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) s += riemann(i, j, i, j, r) / g[j];
    return s;
  }
};

NumericCurvature oracle(const WarpedGeometry& geom) {
  NumericCurvature c;
  c.n = 1 + geom.dim();
  c.metric = [geom](double r) {
    std::array<double, 3> g{1.0, 1.0, 1.0};
    for (int a = 0; a < geom.dim(); ++a) g[static_cast<size_t>(a + 1)] = std::exp(2 * geom.warpings[static_cast<size_t>(a)](r));
    return g;
  };
  return c;
}

}  // namespace

TEST(Geometry, SectionalCurvatureMatchesFiniteDifferenceRiemann) {
  WarpedGeometry geom;
  geom.warpings = {Poly{0.0, 0.0, 1.0, -2.0, 1.0}, Poly{0.0, 0.6, -0.6}};
  const auto o = oracle(geom);
  for (double r : {0.0, 0.3, 1.0}) {
    for (int a = 0; a < 2; ++a)
      EXPECT_NEAR(radial_sectional_curvature(geom, a, r), o.sectional(a + 1, 0, r), 1e-5) << "a=" << a << " r=" << r;
  }
}

TEST(Geometry, ScalarCurvatureMatchesFiniteDifferenceRiemann) {
  WarpedGeometry geom;
  geom.warpings = {Poly{0.0, 0.8, -0.8}, Poly{0.0, -0.3, 0.1, 0.2}};
  const auto o = oracle(geom);
  for (auto p : {BoundaryPoint::Start, BoundaryPoint::End})
    EXPECT_NEAR(scalar_curvature(geom, p), o.scalar(boundary_coordinate(p)), 1e-5);
}

TEST(Geometry, RoundSphereSignConvention) {
  // near the equator dr^2 + cos^2(r) dtheta^2 has curvature +1; f = log cos r
  // is not polynomial, so compare the formula to its Taylor data at r = 0:
  // f' = 0, f'' = -1 gives -(f'' + f'^2) = +1.
  WarpedGeometry geom;
  geom.warpings = {Poly{0.0, 0.0, -0.5}};
  EXPECT_DOUBLE_EQ(radial_sectional_curvature(geom, 0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(scalar_curvature(geom, BoundaryPoint::Start), 2.0);
}

TEST(Geometry, SecondFundamentalFormUsesInwardNormal) {
  WarpedGeometry geom;
  geom.warpings = {Poly{0.0, 0.5}};  // f' = 0.5
  const auto start = boundary_geometry(geom, BoundaryPoint::Start);
  const auto end = boundary_geometry(geom, BoundaryPoint::End);
  // L_aa = -sigma f' with sigma = +1 at r = 0 and -1 at r = 1
  EXPECT_DOUBLE_EQ(start.L_trace, -0.5);
  EXPECT_DOUBLE_EQ(end.L_trace, 0.5);
  EXPECT_DOUBLE_EQ(start.L_norm2, 0.25);
  const auto outward = boundary_geometry(geom, BoundaryPoint::Start, Orientation::Outward);
  EXPECT_DOUBLE_EQ(outward.L_trace, 0.5);
}

TEST(Geometry, SecondFundamentalFormMatchesChristoffel) {
  // L_aa = g(nabla_{e_a} e_a, N) = Gamma^r_aa / g_aa for N = +d/dr
  WarpedGeometry geom;
  geom.warpings = {Poly{0.0, 0.3, 0.4}, Poly{0.0, -0.7, 0.2}};
  const auto o = oracle(geom);
  const auto G = o.christoffel(0.0);
  const auto g = o.metric(0.0);
  const auto bg = boundary_geometry(geom, BoundaryPoint::Start);
  for (int a = 0; a < 2; ++a) EXPECT_NEAR(bg.L(a, a), G[0][a + 1][a + 1] / g[static_cast<size_t>(a + 1)], 1e-8);
}

TEST(Geometry, Validation) {
  WarpedGeometry three;
  three.warpings = {Poly{}, Poly{}, Poly{}};
  EXPECT_THROW(three.validate(), PreconditionError);
  WarpedGeometry open;
  open.warpings = {Poly{0.1}};
  EXPECT_NO_THROW(open.validate());
  EXPECT_THROW(open.validate(true), PreconditionError);
  WarpedGeometry flat;
  flat.warpings = {Poly{}};
  EXPECT_THROW(validate_gluing(open, flat, BoundaryPoint::Start), PreconditionError);
  EXPECT_NO_THROW(validate_gluing(flat, flat, BoundaryPoint::End));
}

TEST(Geometry, VolumeDensity) {
  WarpedGeometry geom;
  geom.warpings = {Poly{0.0, 1.0}, Poly{0.0, 0.0, 1.0}};
  EXPECT_NEAR(geom.volume_density(0.5), std::exp(0.5 + 0.25), 1e-15);
}
