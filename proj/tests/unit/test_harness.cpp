#include "heatlab/error.hpp"
#include "heatlab/harness.hpp"

#include <gtest/gtest.h>

using namespace heatlab;

TEST(Harness, SeededRandomIsDeterministicAndBounded) {
  SeededRandom a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, -1.0);
    EXPECT_LE(x, 1.0);
    differs = differs || x != c.uniform();
    const int k = a.integer(2, 5);
    b.integer(2, 5);
    EXPECT_GE(k, 2);
    EXPECT_LE(k, 5);
  }
  EXPECT_TRUE(differs);
}

TEST(Harness, EvaluatorChecksPass) {
  HarnessOptions o;
  o.solver_checks = false;
  for (const auto& outcome : run_harness(o)) {
    EXPECT_TRUE(outcome.pass) << outcome.name << ": " << (outcome.failures.empty() ? "" : outcome.failures.front());
    EXPECT_GT(outcome.cases, 0) << outcome.name;
  }
}

TEST(Harness, OutcomesAreReproducible) {
  HarnessOptions o;
  o.seed = 9;
  const auto a = run_harness(o, {"b2_identities"});
  const auto b = run_harness(o, {"b2_identities"});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(outcome_json(a[0]).dump(), outcome_json(b[0]).dump());
}

TEST(Harness, FailureCarriesReplayableProblem) {
  HarnessOptions o;
  o.solver_checks = false;
  o.constants = ConstantTable::published().mutated("a22:*21/20");
  const auto out = check_separation_of_variables(o);
  ASSERT_FALSE(out.pass);
  ASSERT_FALSE(out.failures.empty());
  HarnessOptions w;
  w.solver_checks = false;
  w.constants = ConstantTable::published().mutated("a3:*21/20");
  const auto warped = check_warped_reduction(w);
  ASSERT_FALSE(warped.pass);
  const std::string& msg = warped.failures.front();
  const auto pos = msg.find("problem ");
  ASSERT_NE(pos, std::string::npos);
  const RunConfig rc = parse_config(Json::parse(msg.substr(pos + 8)));
  EXPECT_EQ(rc.problem.sides.size(), 2u);
}

TEST(Harness, CoverageDetectsAnUntouchedConstant) {
  CheckOutcome partial;
  partial.touched = {"a1", "a2"};
  const auto c = check_coverage({partial}, ConstantTable::published());
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.failures.size(), 43u);
}

TEST(Harness, ReducedProblemNeedsModeZero) {
  Problem p;
  WarpedGeometry g;
  g.warpings = {Poly{0.0, 1.0, -1.0}};
  p.sides = {{LaplaceData::scalar_laplacian(g, 1), {RadialFn(Poly{1.0})}, {RadialFn(Poly{1.0})}}};
  p.mode = {1};
  EXPECT_THROW(reduced_problem(p), PreconditionError);
}

TEST(Harness, UnknownSelection) { EXPECT_THROW(run_harness(HarnessOptions{}, {"nonsense"}), ConfigError); }
