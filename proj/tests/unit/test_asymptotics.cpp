#include "heatlab/asymptotics.hpp"
#include "heatlab/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace heatlab;

namespace {

HeatContentSamples synthetic(const std::vector<double>& coeffs, const std::vector<double>& times) {
  HeatContentSamples s;
  s.times = times;
  for (double t : times) {
    double v = 0.0;
    for (size_t k = 0; k < coeffs.size(); ++k) v += coeffs[k] * std::pow(t, 0.5 * static_cast<double>(k));
    s.values.push_back(v);
    s.errors.push_back(0.0);
  }
  return s;
}

}  // namespace

TEST(Fit, RecoversDirichletSeries) {
  // 1 - 4 sqrt(t / pi)
  const double b1 = -4.0 / std::sqrt(std::numbers::pi);
  const auto fit = fit_half_powers(synthetic({1.0, b1}, default_times()), 6);
  EXPECT_NEAR(fit.coefficients(0), 1.0, 1e-9);
  EXPECT_NEAR(fit.coefficients(1), b1, 1e-9);
  for (int k = 2; k <= 6; ++k) EXPECT_NEAR(fit.coefficients(k), 0.0, 1e-6);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_DOUBLE_EQ(fit.t_max, 0.01);
}

TEST(Fit, RecoversFullPolynomialInSqrtT) {
  const std::vector<double> c = {0.3, -1.2, 2.0, 0.7, -3.0, 5.0, 1.0};
  const auto fit = fit_half_powers(synthetic(c, default_times()), 6);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(fit.coefficients(k), c[static_cast<size_t>(k)], 1e-6 * std::pow(10.0, k));
}

TEST(Fit, SensitivityReflectsNoise) {
  auto s = synthetic({1.0, -2.0, 1.0}, default_times());
  const auto clean = fit_half_powers(s, 6);
  for (size_t i = 0; i < s.values.size(); i += 2) s.values[i] += 1e-7;
  const auto noisy = fit_half_powers(s, 6);
  EXPECT_GT(noisy.sensitivity(3), clean.sensitivity(3));
}

TEST(Fit, Preconditions) {
  EXPECT_THROW(fit_half_powers(synthetic({1.0}, geometric_times(0.01, 0.5, 6)), 6), PreconditionError);
  EXPECT_THROW(fit_half_powers(synthetic({1.0}, geometric_times(0.01, 0.9, 16)), 6), PreconditionError);
}

TEST(Verdicts, ToleranceIsMaxOfRelativeAndAbsolute) {
  FitResult f;
  f.coefficients = Eigen::VectorXd::Zero(5);
  f.coefficients << 1.0005, -2.0, 0.0009, 0.5, 0.0;
  CoefficientSet theory;
  theory.beta = {1.0, -2.001, 0.0, 0.6};
  const auto v = compare(f, theory, {{1e-3, 0.0}, {1e-4, 0.0}, {0.0, 1e-3}, {1e-2, 1e-2}});
  ASSERT_EQ(v.size(), 4u);
  EXPECT_TRUE(v[0].pass);
  EXPECT_FALSE(v[1].pass);
  EXPECT_TRUE(v[2].pass);
  EXPECT_FALSE(v[3].pass);
  EXPECT_FALSE(all_pass(v));
}
