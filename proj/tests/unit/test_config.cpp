#include "heatlab/config.hpp"
#include "heatlab/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace heatlab;

namespace {

Json base() {
  return parse_json_text(R"({
    "sides": [{"phi": [1], "rho": ["1/2"]}],
    "conditions": [{"kind": "dirichlet", "at": "0+"}, {"kind": "robin", "at": "1+", "S": "0.25"}]
  })");
}

std::string error_path(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(Config, ParsesDefaults) {
  const RunConfig rc = parse_config(base());
  EXPECT_EQ(rc.problem.sides.size(), 1u);
  EXPECT_DOUBLE_EQ(rc.problem.sides[0].rho[0](0.3), 0.5);
  EXPECT_DOUBLE_EQ(rc.problem.conditions[1].S(0, 0), 0.25);
  EXPECT_EQ(rc.disc.scheme, Scheme::Spectral);
  EXPECT_EQ(rc.disc.resolution, 256);
  EXPECT_EQ(rc.n_terms, 6);
  EXPECT_EQ(rc.times, default_times());
  ASSERT_EQ(rc.tolerances.size(), 4u);
  EXPECT_DOUBLE_EQ(rc.tolerances[3].rel, 1e-2);
}

TEST(Config, SolverAndFitSections) {
  Json doc = base();
  doc["solver"] = {{"scheme", "fd2"}, {"route", "timestep"}, {"times", {{"t_max", 0.02}, {"ratio", 0.5}, {"count", 12}}}};
  doc["fit"] = {{"n_terms", 5}};
  const RunConfig rc = parse_config(doc);
  EXPECT_EQ(rc.disc.scheme, Scheme::FD2);
  EXPECT_EQ(rc.disc.resolution, 512);
  EXPECT_EQ(rc.route, Route::Timestep);
  EXPECT_EQ(rc.times.size(), 12u);
  EXPECT_EQ(rc.n_terms, 5);
}

TEST(Config, ErrorsCarryPaths) {
  Json unknown = base();
  unknown["sides"][0]["colour"] = 1;
  EXPECT_EQ(error_path(unknown), "sides[0].colour");

  Json missing = base();
  missing["conditions"].erase(1);
  EXPECT_EQ(error_path(missing), "conditions");

  Json bad_number = base();
  bad_number["conditions"][1]["S"] = "one";
  EXPECT_EQ(error_path(bad_number), "conditions[1].S");

  Json bad_kind = base();
  bad_kind["conditions"][0]["kind"] = "periodic";
  EXPECT_EQ(error_path(bad_kind), "conditions[0].kind");

  Json components = base();
  components["sides"][0]["phi"] = {1, 2};
  EXPECT_EQ(error_path(components), "sides[0].phi");

  Json scheme = base();
  scheme["solver"] = {{"scheme", "fem"}};
  EXPECT_EQ(error_path(scheme), "solver.scheme");

  EXPECT_THROW(parse_json_text("{"), ConfigError);
}

TEST(Config, InadmissibleDataIsAPreconditionError) {
  Json doc = base();
  doc["sides"][0]["fiber_dim"] = 1;
  doc["sides"][0]["warpings"] = {{0.0}};
  doc["sides"][0]["operator"] = {{"omega_theta", {{{1}}}}};
  doc["mode"] = {2};
  EXPECT_THROW(parse_config(doc), PreconditionError);
}

TEST(Config, ProblemRoundTrip) {
  const RunConfig rc = parse_config(parse_json_text(R"({
    "sides": [
      {"warpings": [[0, 0, 1, -2, 1]], "fiber_dim": 2,
       "operator": {"omega_r": [[[], [0.5]], [[-0.5], []]], "E": [[[1], [0, 1]], [[0, 1], [2]]]},
       "phi": [1, {"poly": [0, 1], "exp": [0, 0.5]}], "rho": [[1, 1], 0]},
      {"warpings": [[]], "fiber_dim": 2, "phi": [1, 1], "rho": [1, 0]}
    ],
    "conditions": [
      {"kind": "transmission", "at": "0", "S_pp": [[1, 0], [0, 1]], "S_pm": [[0, 1], [1, 0]]},
      {"kind": "dirichlet", "at": "1+"},
      {"kind": "neumann", "at": "1-"}
    ]
  })"));
  Json doc = problem_to_json(rc.problem);
  const RunConfig again = parse_config(doc);
  EXPECT_EQ(problem_to_json(again.problem), doc);
  const auto a = evaluate(rc.problem), b = evaluate(again.problem);
  for (size_t n = 0; n < 4; ++n) EXPECT_DOUBLE_EQ(a.beta[n], b.beta[n]);
}

TEST(Config, PhysicsTransmission) {
  const RunConfig rc = parse_config(parse_json_text(R"({
    "sides": [{"phi": [1], "rho": [1]}, {"phi": [0], "rho": [1]}],
    "conditions": [
      {"kind": "transmission", "at": "0", "physics": {"K_plus": 2, "K_minus": "1/2", "H": 1}},
      {"kind": "dirichlet", "at": "1+"}, {"kind": "dirichlet", "at": "1-"}
    ]
  })"));
  const auto& c = rc.problem.conditions[0];
  EXPECT_DOUBLE_EQ(c.S_pp(0, 0), -0.5);
  EXPECT_DOUBLE_EQ(c.S_pm(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(c.S_mm(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(c.S_mp(0, 0), 2.0);
}

TEST(Config, HashIsStableAndSensitive) {
  const Json a = base();
  Json b = base();
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b["conditions"][1]["S"] = "0.26";
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Config, CsvLayout) {
  HeatContentSamples s;
  s.times = {0.01, 0.005};
  s.values = {0.5, 0.25};
  s.errors = {1e-12, 0.0};
  EXPECT_EQ(samples_csv(s), "t,beta,err\n0.01,0.5,9.9999999999999998e-13\n0.0050000000000000001,0.25,0\n");
}

TEST(Config, ReportKeys) {
  const RunConfig rc = parse_config(base());
  const Json r = make_report(rc.source, {{"theory", theory_json(evaluate(rc.problem))}});
  EXPECT_TRUE(r.contains("config_hash"));
  EXPECT_TRUE(r.contains("version"));
  for (const char* k : {"beta0", "beta1", "beta2", "beta3", "terms"}) EXPECT_TRUE(r["theory"].contains(k)) << k;
}
