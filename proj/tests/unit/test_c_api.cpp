#include <heatlab/heatlab.h>

#include <json.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace {

const char* kDirichlet = R"({
  "sides": [{"phi": [1], "rho": [1]}],
  "conditions": [{"kind": "dirichlet", "at": "0+"}, {"kind": "dirichlet", "at": "1+"}]
})";

struct Session {
  heatlab_session* h = nullptr;
  Session() { EXPECT_EQ(heatlab_session_create(&h), HEATLAB_OK); }
  ~Session() { heatlab_session_destroy(h); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  heatlab_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, TheoryAndReports) {
  Session s;
  ASSERT_EQ(heatlab_session_load_json(s.h, kDirichlet), HEATLAB_OK);
  double beta[4];
  ASSERT_EQ(heatlab_theory(s.h, beta), HEATLAB_OK);
  EXPECT_NEAR(beta[1], -4.0 / std::sqrt(M_PI), 1e-14);

  char* text = nullptr;
  ASSERT_EQ(heatlab_coeffs(s.h, &text), HEATLAB_OK);
  const auto report = nlohmann::json::parse(take(text));
  EXPECT_EQ(report["version"], heatlab_version());
  EXPECT_NEAR(report["theory"]["beta1"].get<double>(), beta[1], 1e-15);

  ASSERT_EQ(heatlab_verify(s.h, &text), HEATLAB_OK);
  EXPECT_EQ(nlohmann::json::parse(take(text))["verdict"], "PASS");
}

TEST(CApi, SimulateCsvIsDeterministic) {
  Session s;
  ASSERT_EQ(heatlab_session_load_json(s.h, kDirichlet), HEATLAB_OK);
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(heatlab_simulate(s.h, "csv", &a), HEATLAB_OK);
  ASSERT_EQ(heatlab_simulate(s.h, "csv", &b), HEATLAB_OK);
  const std::string csv = take(a);
  EXPECT_EQ(csv, take(b));
  EXPECT_EQ(csv.rfind("t,beta,err\n0.01,0.7743241665", 0), 0u);
  EXPECT_EQ(heatlab_simulate(s.h, "xml", &a), HEATLAB_INVALID_ARGUMENT);
}

TEST(CApi, ErrorCodes) {
  Session s;
  char* text = nullptr;
  EXPECT_EQ(heatlab_coeffs(s.h, &text), HEATLAB_CONFIG_ERROR);
  EXPECT_EQ(heatlab_session_load_json(s.h, "{\"sides\": []}"), HEATLAB_CONFIG_ERROR);
  EXPECT_NE(std::string(heatlab_last_error()).find("sides"), std::string::npos);
  EXPECT_EQ(heatlab_session_load_json(s.h, "not json"), HEATLAB_CONFIG_ERROR);
  EXPECT_EQ(heatlab_session_mutate(s.h, "nope"), HEATLAB_CONFIG_ERROR);
  EXPECT_EQ(heatlab_session_load_json(nullptr, kDirichlet), HEATLAB_INVALID_ARGUMENT);

  ASSERT_EQ(heatlab_session_load_json(s.h, kDirichlet), HEATLAB_OK);
  ASSERT_EQ(heatlab_session_set_grid(s.h, 4), HEATLAB_OK);
  EXPECT_EQ(heatlab_simulate(s.h, "csv", &text), HEATLAB_NUMERIC_ERROR);
  EXPECT_STREQ(heatlab_status_name(HEATLAB_NUMERIC_ERROR), "numeric failure");
}

TEST(CApi, MutationFailsRelations) {
  Session s;
  char* text = nullptr;
  ASSERT_EQ(heatlab_relations(s.h, &text), HEATLAB_OK);
  take(text);
  ASSERT_EQ(heatlab_session_mutate(s.h, "a7:*21/20"), HEATLAB_OK);
  EXPECT_EQ(heatlab_relations(s.h, &text), HEATLAB_VERDICT_FAIL);
  EXPECT_EQ(nlohmann::json::parse(take(text))["verdict"], "FAIL");
  ASSERT_EQ(heatlab_session_reset_constants(s.h), HEATLAB_OK);
  EXPECT_EQ(heatlab_relations(s.h, &text), HEATLAB_OK);
  take(text);
}

TEST(CApi, HarnessSelection) {
  Session s;
  char* names = nullptr;
  ASSERT_EQ(heatlab_harness_checks(&names), HEATLAB_OK);
  EXPECT_NE(take(names).find("separation_of_variables"), std::string::npos);
  char* text = nullptr;
  ASSERT_EQ(heatlab_harness(s.h, "separation_of_variables", &text), HEATLAB_OK);
  const auto r = nlohmann::json::parse(take(text));
  ASSERT_EQ(r["checks"].size(), 1u);
  EXPECT_EQ(r["checks"][0]["verdict"], "PASS");
  EXPECT_EQ(heatlab_harness(s.h, "unknown_check", &text), HEATLAB_CONFIG_ERROR);
}
