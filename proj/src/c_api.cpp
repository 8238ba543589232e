#include "heatlab/heatlab.h"

#include "heatlab/asymptotics.hpp"
#include "heatlab/config.hpp"
#include "heatlab/error.hpp"
#include "heatlab/harness.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

using namespace heatlab;

struct heatlab_session {
  std::optional<RunConfig> config;
  int grid = 0;
  std::uint64_t seed = 1;
  ConstantTable constants = ConstantTable::published();
  std::vector<std::string> mutations;
};

namespace {

thread_local std::string last_error;

heatlab_status fail(heatlab_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
heatlab_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const ConfigError& e) {
    return fail(HEATLAB_CONFIG_ERROR, e.what());
  } catch (const PreconditionError& e) {
    return fail(HEATLAB_NUMERIC_ERROR, std::string("precondition: ") + e.what());
  } catch (const NumericError& e) {
    return fail(HEATLAB_NUMERIC_ERROR, std::string("numeric: ") + e.what());
  } catch (const std::exception& e) {
    return fail(HEATLAB_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(HEATLAB_INTERNAL_ERROR, "unknown exception");
  }
}

char* duplicate(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

const RunConfig& need_config(const heatlab_session* s) {
  if (!s->config) throw ConfigError("", "no configuration loaded");
  return *s->config;
}

Discretization discretization(const heatlab_session* s) {
  Discretization d = need_config(s).disc;
  if (s->grid > 0) d.resolution = s->grid;
  return d;
}

/// What the report hash covers: the config plus every run option that changes results.
Json hashed_input(const heatlab_session* s) {
  Json j = s->config ? s->config->source : Json::object();
  Json opts = {{"grid", s->grid}, {"seed", s->seed}, {"mutations", s->mutations}};
  return {{"config", j}, {"options", opts}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

HeatContentSamples run_samples(const heatlab_session* s) {
  const RunConfig& rc = need_config(s);
  return simulate(rc.problem, discretization(s), rc.times, rc.route, rc.steps);
}

Json run_json(const heatlab_session* s) {
  const RunConfig& rc = need_config(s);
  const Discretization d = discretization(s);
  return {{"scheme", d.scheme == Scheme::Spectral ? "spectral" : "fd2"},
          {"resolution", d.resolution},
          {"route", to_string(rc.route)},
          {"n_terms", rc.n_terms}};
}

std::vector<std::string> split_names(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

extern "C" {

const char* heatlab_version(void) {
  static const std::string v = version();
  return v.c_str();
}

const char* heatlab_last_error(void) { return last_error.c_str(); }

const char* heatlab_status_name(heatlab_status status) {
  switch (status) {
    case HEATLAB_OK: return "ok";
    case HEATLAB_VERDICT_FAIL: return "verdict failure";
    case HEATLAB_CONFIG_ERROR: return "config error";
    case HEATLAB_NUMERIC_ERROR: return "numeric failure";
    case HEATLAB_INVALID_ARGUMENT: return "invalid argument";
    case HEATLAB_INTERNAL_ERROR: return "internal error";
  }
  return "unknown";
}

void heatlab_string_free(char* s) { std::free(s); }

heatlab_status heatlab_session_create(heatlab_session** out) {
  if (!out) return fail(HEATLAB_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new heatlab_session();
    return HEATLAB_OK;
  });
}

void heatlab_session_destroy(heatlab_session* session) { delete session; }

heatlab_status heatlab_session_load_file(heatlab_session* session, const char* path) {
  if (!session || !path) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    session->config = load_config(path);
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_session_load_json(heatlab_session* session, const char* text) {
  if (!session || !text) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    session->config = parse_config(parse_json_text(text));
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_session_set_grid(heatlab_session* session, int resolution) {
  if (!session) return fail(HEATLAB_INVALID_ARGUMENT, "null session");
  if (resolution < 0) return fail(HEATLAB_INVALID_ARGUMENT, "grid must be non-negative");
  session->grid = resolution;
  return HEATLAB_OK;
}

heatlab_status heatlab_session_set_seed(heatlab_session* session, uint64_t seed) {
  if (!session) return fail(HEATLAB_INVALID_ARGUMENT, "null session");
  session->seed = seed;
  return HEATLAB_OK;
}

heatlab_status heatlab_session_mutate(heatlab_session* session, const char* spec) {
  if (!session || !spec) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    session->constants = session->constants.mutated(spec);
    session->mutations.emplace_back(spec);
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_session_reset_constants(heatlab_session* session) {
  if (!session) return fail(HEATLAB_INVALID_ARGUMENT, "null session");
  session->constants = ConstantTable::published();
  session->mutations.clear();
  return HEATLAB_OK;
}

heatlab_status heatlab_session_output(const heatlab_session* session, char** path, char** format) {
  if (!session || !path || !format) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const RunConfig& rc = need_config(session);
    *path = duplicate(rc.output_path);
    *format = duplicate(rc.output_format);
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_theory(heatlab_session* session, double beta[4]) {
  if (!session || !beta) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const CoefficientSet c = evaluate(need_config(session).problem, session->constants);
    for (int n = 0; n < 4; ++n) beta[n] = c.beta[static_cast<size_t>(n)];
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_coeffs(heatlab_session* session, char** report) {
  if (!session || !report) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const CoefficientSet c = evaluate(need_config(session).problem, session->constants);
    *report = duplicate(dump(make_report(hashed_input(session), {{"theory", theory_json(c)}})));
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_simulate(heatlab_session* session, const char* format, char** output) {
  if (!session || !format || !output) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  const std::string f = format;
  if (f != "csv" && f != "json") return fail(HEATLAB_INVALID_ARGUMENT, "format must be 'csv' or 'json'");
  return guarded([&] {
    const HeatContentSamples s = run_samples(session);
    if (f == "csv") {
      *output = duplicate(samples_csv(s));
    } else {
      *output = duplicate(
          dump(make_report(hashed_input(session), {{"run", run_json(session)}, {"samples", samples_json(s)}})));
    }
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_fit(heatlab_session* session, char** report) {
  if (!session || !report) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const HeatContentSamples s = run_samples(session);
    const FitResult fit = fit_half_powers(s, need_config(session).n_terms);
    *report = duplicate(dump(make_report(hashed_input(session), {{"run", run_json(session)}, {"fit", fit_json(fit)}})));
    return HEATLAB_OK;
  });
}

heatlab_status heatlab_verify(heatlab_session* session, char** report) {
  if (!session || !report) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const RunConfig& rc = need_config(session);
    const CoefficientSet theory = evaluate(rc.problem, session->constants);
    const HeatContentSamples s = run_samples(session);
    const FitResult fit = fit_half_powers(s, rc.n_terms);
    const auto verdicts = compare(fit, theory, rc.tolerances);
    const bool pass = all_pass(verdicts);
    *report = duplicate(dump(make_report(hashed_input(session), {{"run", run_json(session)},
                                                                 {"theory", theory_json(theory)},
                                                                 {"fit", fit_json(fit)},
                                                                 {"verdicts", verdicts_json(verdicts)},
                                                                 {"verdict", pass ? "PASS" : "FAIL"}})));
    if (pass) return HEATLAB_OK;
    return fail(HEATLAB_VERDICT_FAIL, "at least one coefficient is outside its tolerance");
  });
}

heatlab_status heatlab_relations(heatlab_session* session, char** report) {
  if (!session || !report) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    bool pass = true;
    Json rows = Json::array();
    for (const auto& r : verify_constant_relations(session->constants)) {
      pass = pass && r.holds;
      rows.push_back({{"group", r.group},
                      {"relation", r.text},
                      {"lhs", r.lhs.str()},
                      {"rhs", r.rhs.str()},
                      {"verdict", r.holds ? "PASS" : "FAIL"}});
    }
    *report = duplicate(
        dump(make_report(hashed_input(session), {{"relations", rows}, {"verdict", pass ? "PASS" : "FAIL"}})));
    if (pass) return HEATLAB_OK;
    return fail(HEATLAB_VERDICT_FAIL, "a constant relation does not hold");
  });
}

heatlab_status heatlab_harness(heatlab_session* session, const char* selection, char** report) {
  if (!session || !report) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    HarnessOptions opts;
    opts.seed = session->seed;
    opts.constants = session->constants;
    if (session->grid > 0) opts.degree = session->grid;
    const auto names = split_names(selection);
    bool pass = true;
    Json checks = Json::array();
    for (const auto& o : run_harness(opts, names)) {
      pass = pass && o.pass;
      checks.push_back(outcome_json(o));
    }
    Json input = hashed_input(session);
    input["selection"] = names;
    *report = duplicate(dump(make_report(
        input, {{"seed", session->seed}, {"checks", checks}, {"verdict", pass ? "PASS" : "FAIL"}})));
    if (pass) return HEATLAB_OK;
    return fail(HEATLAB_VERDICT_FAIL, "a harness check failed");
  });
}

heatlab_status heatlab_harness_checks(char** names) {
  if (!names) return fail(HEATLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string out;
    for (const auto& n : harness_check_names()) out += (out.empty() ? "" : ",") + n;
    *names = duplicate(out);
    return HEATLAB_OK;
  });
}

}  // extern "C"
