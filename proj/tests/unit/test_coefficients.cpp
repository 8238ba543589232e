#include "heatlab/error.hpp"
#include "heatlab/problem.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace heatlab;

namespace {

const double kRpi = 1.0 / std::sqrt(std::numbers::pi);

ConditionSpec cond(ConditionKind kind, const std::string& at, double value = 0.0) {
  ConditionSpec c;
  c.kind = kind;
  c.at = at;
  const Eigen::MatrixXd m = Eigen::MatrixXd::Constant(1, 1, value);
  if (kind == ConditionKind::Robin) c.S = m;
  if (kind == ConditionKind::Transmittal) c.U = m;
  return c;
}

Side constant_side(double phi, double rho, WarpedGeometry g = {}) {
  return {LaplaceData::scalar_laplacian(std::move(g), 1), {RadialFn(Poly{phi})}, {RadialFn(Poly{rho})}};
}

Problem random_transmission() {
  Problem p;
  LaplaceData op = LaplaceData::scalar_laplacian({}, 1);
  op.omega_r = PolyMatrix::scalar(Poly{0.2, -0.3}, 1);
  op.E = PolyMatrix::scalar(Poly{0.5, 0.0, 1.0}, 1);
  p.sides = {{op, {RadialFn(Poly{1.0, 0.4, -0.2})}, {RadialFn(Poly{0.7, -1.0})}},
             {LaplaceData::scalar_laplacian({}, 1), {RadialFn(Poly{-0.3, 0.8})}, {RadialFn(Poly{1.0, 0.0, 0.5})}}};
  ConditionSpec t;
  t.kind = ConditionKind::Transmission;
  t.at = "0";
  t.S_pp = Eigen::MatrixXd::Constant(1, 1, 0.3);
  t.S_pm = Eigen::MatrixXd::Constant(1, 1, -0.7);
  t.S_mp = Eigen::MatrixXd::Constant(1, 1, 0.4);
  t.S_mm = Eigen::MatrixXd::Constant(1, 1, 1.1);
  p.conditions = {t, cond(ConditionKind::Robin, "1+", 0.6), cond(ConditionKind::Dirichlet, "1-")};
  return p;
}

}  // namespace

TEST(Coefficients, DirichletInterval) {
  Problem p;
  p.sides = {constant_side(1, 1)};
  p.conditions = {cond(ConditionKind::Dirichlet, "0+"), cond(ConditionKind::Dirichlet, "1+")};
  const auto c = evaluate(p);
  EXPECT_NEAR(c.beta[0], 1.0, 1e-14);
  EXPECT_NEAR(c.beta[1], -4.0 * kRpi, 1e-14);
  EXPECT_NEAR(c.beta[2], 0.0, 1e-14);
  EXPECT_NEAR(c.beta[3], 0.0, 1e-14);
}

TEST(Coefficients, RobinInterval) {
  for (double s : {0.5, 1.0, 2.0}) {
    Problem p;
    p.sides = {constant_side(1, 1)};
    p.conditions = {cond(ConditionKind::Robin, "0+", s), cond(ConditionKind::Robin, "1+", s)};
    const auto c = evaluate(p);
    EXPECT_NEAR(c.beta[1], 0.0, 1e-14);
    EXPECT_NEAR(c.beta[2], 2.0 * s, 1e-13);
    EXPECT_NEAR(c.beta[3], 8.0 * s * s * kRpi / 3.0, 1e-13);
  }
}

TEST(Coefficients, ContinuousUnitOnGluedIntervalsHasNoCorrections) {
  Problem p;
  p.sides = {constant_side(1, 0.3), constant_side(1, -2.0)};
  p.conditions = {cond(ConditionKind::Transmittal, "0"), cond(ConditionKind::Robin, "1+"),
                  cond(ConditionKind::Robin, "1-")};
  const auto c = evaluate(p);
  EXPECT_NEAR(c.beta[0], 0.3 - 2.0, 1e-14);
  for (int n = 1; n < 4; ++n) EXPECT_NEAR(c.beta[static_cast<size_t>(n)], 0.0, 1e-14);
}

TEST(Coefficients, PureImpedanceTerm) {
  // phi and rho supported on the plus side, Neumann ends: beta_3 = u^2 / (6 sqrt(pi))
  const double u = 0.7;
  Problem p;
  p.sides = {constant_side(1, 1), constant_side(0, 0)};
  p.conditions = {cond(ConditionKind::Transmittal, "0", u), cond(ConditionKind::Robin, "1+"),
                  cond(ConditionKind::Robin, "1-")};
  EXPECT_NEAR(evaluate(p).beta[3], u * u * kRpi / 6.0, 1e-14);
}

TEST(Coefficients, InvariantUnderDuality) {
  const Problem p = random_transmission();
  const auto a = evaluate(p), b = evaluate(dual_problem(p));
  for (size_t n = 0; n < 4; ++n) EXPECT_NEAR(a.beta[n], b.beta[n], 1e-12 * (1 + std::abs(a.beta[n])));
}

TEST(Coefficients, InvariantUnderSideSwap) {
  const Problem p = random_transmission();
  const auto traces = build_traces(p);
  ASSERT_EQ(traces.transmission.size(), 1u);
  std::vector<InterfaceTrace> swapped;
  for (const auto& t : traces.transmission) swapped.push_back(swap_sides(t));
  const auto a = beta_b2(traces.transmission), b = beta_b2(swapped);
  for (size_t n = 0; n < 4; ++n) EXPECT_NEAR(a.beta[n], b.beta[n], 1e-13);
}

TEST(Coefficients, EndomorphismShiftDerivative) {
  // beta(D - eps) = e^{eps t} beta(D): d beta_{n+2}/d eps = beta_n
  const Problem p = random_transmission();
  const double h = 1e-4;
  const auto c = evaluate(p), up = evaluate(shift_endomorphism(p, h)), dn = evaluate(shift_endomorphism(p, -h));
  for (size_t n = 0; n < 4; ++n) {
    const double d = (up.beta[n] - dn.beta[n]) / (2 * h);
    EXPECT_NEAR(d, n >= 2 ? c.beta[n - 2] : 0.0, 1e-8);
  }
}

TEST(Coefficients, LinearInRho) {
  Problem a = random_transmission(), b = a, sum = a;
  b.sides[0].rho = {RadialFn(Poly{0.0, 0.0, 1.0})};
  b.sides[1].rho = {RadialFn(Poly{-1.0})};
  sum.sides[0].rho = {RadialFn(a.sides[0].rho[0].poly() + b.sides[0].rho[0].poly())};
  sum.sides[1].rho = {RadialFn(a.sides[1].rho[0].poly() + b.sides[1].rho[0].poly())};
  const auto ca = evaluate(a), cb = evaluate(b), cs = evaluate(sum);
  for (size_t n = 0; n < 4; ++n) EXPECT_NEAR(cs.beta[n], ca.beta[n] + cb.beta[n], 1e-12);
}

TEST(Coefficients, TermsSumToBeta) {
  const auto c = evaluate(random_transmission());
  std::array<double, 4> sum{};
  for (const auto& t : c.terms) sum[static_cast<size_t>(t.order)] += t.value;
  for (size_t n = 0; n < 4; ++n) EXPECT_NEAR(sum[n], c.beta[n], 1e-12);
}

TEST(Coefficients, ValidationErrors) {
  Problem p;
  p.sides = {constant_side(1, 1)};
  p.conditions = {cond(ConditionKind::Dirichlet, "0+")};
  EXPECT_THROW(evaluate(p), ConfigError);
  p.conditions.push_back(cond(ConditionKind::Transmittal, "1"));
  EXPECT_THROW(evaluate(p), ConfigError);
  Problem modes;
  WarpedGeometry g;
  g.warpings = {Poly{}};
  LaplaceData op = LaplaceData::scalar_laplacian(g, 2);
  op.omega_theta = {Eigen::MatrixXd::Identity(2, 2)};
  modes.sides = {{op, {RadialFn(Poly{1.0}), RadialFn(Poly{1.0})}, {RadialFn(Poly{1.0}), RadialFn(Poly{1.0})}}};
  modes.conditions = {cond(ConditionKind::Dirichlet, "0+"), cond(ConditionKind::Dirichlet, "1+")};
  modes.mode = {1};
  EXPECT_THROW(evaluate(modes), PreconditionError);
}
