#include "heatlab/constants.hpp"
#include "heatlab/error.hpp"
#include "heatlab/polynomial.hpp"
#include "heatlab/quadrature.hpp"
#include "heatlab/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace heatlab;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
}

TEST(Rational, Parses) {
  EXPECT_EQ(Rational::parse("-1/2"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("0.05"), Rational(1, 20));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/2x"), std::invalid_argument);
  EXPECT_EQ(Rational::parse("-.5"), Rational(-1, 2));
}

TEST(PiRational, HalfPowersOfPi) {
  const PiRational x = PiRational(Rational(4), 1);  // 4/sqrt(pi)
  EXPECT_NEAR(x.to_double(), 4.0 / std::sqrt(std::numbers::pi), 1e-15);
  const PiRational sq = x * x;  // 16/pi
  EXPECT_EQ(sq.pi_power(), 2);
  EXPECT_EQ(sq.rational_part(), Rational(16));
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_FALSE((x + PiRational(Rational(1))).is_zero());
}

TEST(Poly, ArithmeticAndCalculus) {
  const Poly p{1.0, -2.0, 3.0};  // 1 - 2r + 3r^2
  EXPECT_DOUBLE_EQ(p(2.0), 9.0);
  EXPECT_EQ(p.derivative(), (Poly{-2.0, 6.0}));
  EXPECT_EQ(p.derivative(3), Poly{});
  EXPECT_EQ(p * Poly({0.0, 1.0}), (Poly{0.0, 1.0, -2.0, 3.0}));
  EXPECT_DOUBLE_EQ(p.antiderivative()(1.0), 1.0 - 1.0 + 1.0);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(RadialFn, DerivativeOfExponentialProduct) {
  // (r^2) e^{r}: derivative (2r + r^2) e^r
  const RadialFn f(Poly{0.0, 0.0, 1.0}, Poly{0.0, 1.0});
  const double r = 0.7;
  EXPECT_NEAR(f.derivative()(r), (2 * r + r * r) * std::exp(r), 1e-14);
  EXPECT_NEAR(f.derivative(2)(r), (2 + 4 * r + r * r) * std::exp(r), 1e-13);
}

TEST(Quadrature, GaussExactness) {
  const QuadratureRule q = gauss_legendre(5);
  double s = 0.0;
  for (size_t i = 0; i < q.points.size(); ++i) s += q.weights[i] * std::pow(q.points[i], 9);
  EXPECT_NEAR(s, 0.1, 1e-15);
  const QuadratureRule l = gauss_lobatto(6);
  EXPECT_DOUBLE_EQ(l.points.front(), 0.0);
  EXPECT_DOUBLE_EQ(l.points.back(), 1.0);
  double t = 0.0;
  for (size_t i = 0; i < l.points.size(); ++i) t += l.weights[i] * std::pow(l.points[i], 9);
  EXPECT_NEAR(t, 0.1, 1e-15);
}

TEST(Quadrature, PeriodicRuleIntegratesTrigonometricPolynomials) {
  const QuadratureRule q = periodic_rule(8);
  double c2 = 0.0, c7 = 0.0;
  for (size_t i = 0; i < q.points.size(); ++i) {
    c2 += q.weights[i] * std::pow(std::cos(q.points[i]), 2);
    c7 += q.weights[i] * std::cos(7 * q.points[i]);
  }
  EXPECT_NEAR(c2, std::numbers::pi, 1e-14);
  EXPECT_NEAR(c7, 0.0, 1e-14);
}

TEST(Constants, EveryCatalogRelationHoldsExactly) {
  const auto results = verify_constant_relations();
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.holds) << r.group << ": " << r.text << " gives " << r.lhs.str() << " vs " << r.rhs.str();
}

TEST(Constants, KnownValues) {
  const auto& t = ConstantTable::published();
  EXPECT_EQ(t.exact("a1"), PiRational(Rational(-1), 1));
  EXPECT_EQ(t.exact("a7") - t.exact("a9"), PiRational(Rational(1)));
  EXPECT_TRUE(t.exact("b1").is_zero());
  EXPECT_EQ(t.nonzero_names().size(), 45u);
}

TEST(Constants, MutationBreaksARelation) {
  const auto m = ConstantTable::published().mutated("a5:*21/20");
  bool any_fail = false;
  for (const auto& r : verify_constant_relations(m)) any_fail = any_fail || !r.holds;
  EXPECT_TRUE(any_fail);
  EXPECT_NEAR(m["a5"], 1.05 * ConstantTable::published()["a5"], 1e-15);
  EXPECT_THROW(ConstantTable::published().mutated("zz:*2"), ConfigError);
  EXPECT_THROW(ConstantTable::published().mutated("a5"), ConfigError);
}

TEST(Constants, RelationParser) {
  const auto& t = ConstantTable::published();
  EXPECT_TRUE(evaluate_relation("2a1 - 2a2 = -4rpi", t).holds);
  EXPECT_TRUE(evaluate_relation("(a7 - a9) * 3 = 3", t).holds);
  EXPECT_FALSE(evaluate_relation("a7 = a9", t).holds);
}
