#include "heatlab/error.hpp"
#include "heatlab/operator_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace heatlab;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

PolyMatrix poly_mat2(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
  PolyMatrix m(2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// -(u_rr + sum_a e^{-2 f_a} u_aa + A^r u_r + sum_a A^a u_a + B u), written out directly
Eigen::VectorXd symbol_action(const SymbolData& s, const WarpedGeometry& g, const PointJet& j, double r) {
  Eigen::VectorXd v = j.drr + s.A_r(r) * j.dr + s.B(r) * j.value;
  for (int a = 0; a < g.dim(); ++a) {
    v += std::exp(-2 * g.warpings[static_cast<size_t>(a)](r)) * j.dthth[static_cast<size_t>(a)];
    if (!s.A_theta.empty()) v += s.A_theta[static_cast<size_t>(a)] * j.dth[static_cast<size_t>(a)];
  }
  return -v;
}

}  // namespace

TEST(Operator, SymbolRoundTrip) {
  WarpedGeometry g;
  g.warpings = {Poly{}, Poly{0.0, 0.4, -0.4}};
  SymbolData s;
  s.A_r = poly_mat2(Poly{0.3, 1.0}, Poly{-0.5}, Poly{0.2, 0.1}, Poly{0.0, 0.0, 2.0});
  s.B = poly_mat2(Poly{1.0}, Poly{0.0, 1.0}, Poly{-1.0}, Poly{0.5, 0.5});
  s.A_theta = {mat2(0.0, 1.2, -0.4, 0.3), Eigen::MatrixXd::Zero(2, 2)};
  const LaplaceData op = symbol_to_natural(s, g, 2);
  const SymbolData back = natural_to_symbol(op);
  EXPECT_EQ(back.A_r, s.A_r);
  for (double r : {0.0, 0.4, 1.0}) EXPECT_LT((back.B(r) - s.B(r)).norm(), 1e-13);
  EXPECT_LT((back.A_theta[0] - s.A_theta[0]).norm(), 1e-15);
}

TEST(Operator, NaturalFormReproducesSymbolAction) {
  WarpedGeometry g;
  g.warpings = {Poly{}, Poly{0.0, 0.4, -0.4}};
  SymbolData s;
  s.A_r = poly_mat2(Poly{0.3, 1.0}, Poly{-0.5}, Poly{0.2, 0.1}, Poly{0.0, 0.0, 2.0});
  s.B = poly_mat2(Poly{1.0}, Poly{0.0, 1.0}, Poly{-1.0}, Poly{0.5, 0.5});
  s.A_theta = {mat2(0.0, 1.2, -0.4, 0.3), Eigen::MatrixXd::Zero(2, 2)};
  const LaplaceData op = symbol_to_natural(s, g, 2);
  const FieldComponents u = {RadialFn(Poly{1.0, -1.0, 0.5}), RadialFn(Poly{0.2, 0.3}, Poly{0.0, 0.5})};
  for (const AngularMode& mode : {AngularMode{0, 0}, AngularMode{1, 2}}) {
    for (double r : {0.1, 0.6}) {
      const PointJet j = field_jet(u, mode, r, {0.3, 1.1});
      EXPECT_LT((apply_operator(op, j, r) - symbol_action(s, g, j, r)).norm(), 1e-12);
    }
  }
}

TEST(Operator, AngularFirstOrderOnWarpedDirectionRejected) {
  WarpedGeometry g;
  g.warpings = {Poly{0.0, 1.0}};
  SymbolData s;
  s.A_r = PolyMatrix::zero(1);
  s.B = PolyMatrix::zero(1);
  s.A_theta = {Eigen::MatrixXd::Ones(1, 1)};
  EXPECT_THROW(symbol_to_natural(s, g, 1), PreconditionError);
}

TEST(Operator, DualizeIsAnInvolution) {
  LaplaceData op = LaplaceData::scalar_laplacian({}, 2);
  op.omega_r = poly_mat2(Poly{0.1}, Poly{1.0, 2.0}, Poly{-3.0}, Poly{0.0, 1.0});
  op.E = poly_mat2(Poly{1.0}, Poly{2.0}, Poly{3.0}, Poly{4.0});
  const LaplaceData dd = dualize(dualize(op));
  EXPECT_EQ(dd.omega_r, op.omega_r);
  EXPECT_EQ(dd.E, op.E);
  EXPECT_EQ(dualize(op).E, op.E.transpose());
}

TEST(Operator, DualOperatorIsFormalAdjoint) {
  // int (D u).v = int u.(D~ v) for u, v vanishing to second order at both ends
  LaplaceData op = LaplaceData::scalar_laplacian({}, 2);
  op.omega_r = poly_mat2(Poly{0.1}, Poly{1.0, 2.0}, Poly{-3.0}, Poly{0.0, 1.0});
  op.E = poly_mat2(Poly{1.0}, Poly{2.0, 1.0}, Poly{3.0}, Poly{4.0});
  const LaplaceData dual = dualize(op);
  const Poly bump = Poly{0.0, 0.0, 1.0, -2.0, 1.0};
  const FieldComponents u = {RadialFn(bump * Poly{1.0, 2.0}), RadialFn(bump)};
  const FieldComponents v = {RadialFn(bump * Poly{0.5}), RadialFn(bump * Poly{-1.0, 0.0, 3.0})};
  double lhs = 0.0, rhs = 0.0;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    // midpoint rule; both integrands are smooth polynomials of moderate degree
    const double r = (i + 0.5) / n;
    const PointJet ju = field_jet(u, {}, r, {}), jv = field_jet(v, {}, r, {});
    lhs += apply_operator(op, ju, r).dot(jv.value) / n;
    rhs += ju.value.dot(apply_operator(dual, jv, r)) / n;
  }
  EXPECT_NEAR(lhs, rhs, 1e-5 * std::abs(lhs));
}

TEST(Conditions, RobinResidual) {
  const LaplaceData op = LaplaceData::scalar_laplacian({}, 1);
  ConditionSpec c;
  c.kind = ConditionKind::Robin;
  c.at = "1+";
  c.S = Eigen::MatrixXd::Constant(1, 1, 2.0);
  // u = 1 + r: inward derivative at r = 1 is -1, so -1 + 2 * 2 = 3
  const SidedField u{{RadialFn(Poly{1.0, 1.0})}, {}};
  EXPECT_NEAR(apply_condition(c, u, op, nullptr)[0](0), 3.0, 1e-15);
}

TEST(Conditions, PhysicalContactSatisfiesTransmission) {
  // flux continuity K+ du+/dn+ = -K- du-/dn-, contact law K+ du+/dn+ = H (u+ - u-)
  const double Kp = 2.0, Km = 0.5, H = 1.5;
  const double up = 1.0, um = 0.4;
  const double gp = H * (up - um) / Kp, gm = -H * (up - um) / Km;
  const SidedField u{{RadialFn(Poly{up, gp})}, {RadialFn(Poly{um, gm})}};
  const LaplaceData op = LaplaceData::scalar_laplacian({}, 1);
  const ConditionSpec c = transmission_from_physics(Kp, Km, H, "0");
  const auto res = apply_condition(c, u, op, &op);
  ASSERT_EQ(res.size(), 2u);
  EXPECT_NEAR(res[0](0), 0.0, 1e-15);
  EXPECT_NEAR(res[1](0), 0.0, 1e-15);
  EXPECT_THROW(transmission_from_physics(-1.0, 1.0, 1.0, "0"), PreconditionError);
}

TEST(Conditions, TransmittalResidual) {
  const LaplaceData op = LaplaceData::scalar_laplacian({}, 1);
  ConditionSpec c;
  c.kind = ConditionKind::Transmittal;
  c.at = "0";
  c.U = Eigen::MatrixXd::Constant(1, 1, 0.5);
  // continuous value 2, normal derivatives 0.3 and 0.7: 0.3 + 0.7 - 0.5 * 2 = 0
  const SidedField u{{RadialFn(Poly{2.0, 0.3})}, {RadialFn(Poly{2.0, 0.7})}};
  const auto res = apply_condition(c, u, op, &op);
  EXPECT_NEAR(res[0](0), 0.0, 1e-15);
  EXPECT_NEAR(res[1](0), 0.0, 1e-15);
}

TEST(Conditions, ComponentNames) {
  ConditionSpec c;
  c.at = "1-";
  EXPECT_EQ(c.point(), BoundaryPoint::End);
  EXPECT_EQ(c.side_sign(), -1);
  c.at = "0";
  EXPECT_EQ(c.side_sign(), 0);
}
