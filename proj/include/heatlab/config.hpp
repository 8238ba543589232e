#pragma once

// JSON problem configurations and machine-readable reports.
//
// Numbers may be given as JSON numbers or as decimal/fraction strings
// ("0.05", "-1/3"). Unknown keys are rejected; every ConfigError carries the
// JSON path of the offending value.

#include "heatlab/asymptotics.hpp"
#include "heatlab/problem.hpp"
#include "heatlab/solver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace heatlab {

using Json = nlohmann::json;

struct RunConfig {
  Problem problem;
  Discretization disc;
  Route route = Route::Auto;
  int steps = 48;
  std::vector<double> times;
  int n_terms = 6;
  std::vector<Tolerance> tolerances;  // beta_0 .. beta_3
  std::string output_path;
  std::string output_format;  // "json", "csv" or empty
  Json source;
};

RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::string& path);
Json parse_json_text(const std::string& text);

Json problem_to_json(const Problem& problem);

/// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string config_hash(const Json& doc);
std::string version();

Json theory_json(const CoefficientSet& c);
Json fit_json(const FitResult& f);
Json verdicts_json(const std::vector<Verdict>& v);
Json samples_json(const HeatContentSamples& s);
std::string samples_csv(const HeatContentSamples& s);

/// {config_hash, version} plus the given sections.
Json make_report(const Json& config, const Json& sections);

}  // namespace heatlab
