// heatlab: command-line front end over the C interface.

#include <heatlab/heatlab.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::uint64_t seed = 1;
  int grid = 0;
  std::vector<std::string> mutations;
  std::vector<std::string> checks;
  bool list = false;
};

struct SessionDeleter {
  void operator()(heatlab_session* s) const { heatlab_session_destroy(s); }
};
using Session = std::unique_ptr<heatlab_session, SessionDeleter>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { heatlab_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int report_error(heatlab_status s) {
  std::cerr << "heatlab: " << heatlab_status_name(s) << ": " << heatlab_last_error() << "\n";
  return static_cast<int>(s);
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "heatlab: cannot write '" << path << "'\n";
    return HEATLAB_CONFIG_ERROR;
  }
  f << text;
  return 0;
}

int run(const std::string& command, const Options& o) {
  heatlab_session* raw = nullptr;
  if (heatlab_status s = heatlab_session_create(&raw); s != HEATLAB_OK) return report_error(s);
  Session session(raw);

  heatlab_session_set_seed(raw, o.seed);
  if (heatlab_status s = heatlab_session_set_grid(raw, o.grid); s != HEATLAB_OK) return report_error(s);
  for (const auto& m : o.mutations)
    if (heatlab_status s = heatlab_session_mutate(raw, m.c_str()); s != HEATLAB_OK) return report_error(s);

  const bool needs_config = command != "relations" && command != "harness";
  std::string out = o.out, format = o.format;
  if (needs_config) {
    if (o.config.empty()) {
      std::cerr << "heatlab: " << command << " needs --config PATH\n";
      return HEATLAB_CONFIG_ERROR;
    }
    if (heatlab_status s = heatlab_session_load_file(raw, o.config.c_str()); s != HEATLAB_OK) return report_error(s);
    OwnedString path, fmt;
    heatlab_session_output(raw, &path.p, &fmt.p);
    if (out.empty()) out = path.str();
    if (format.empty()) format = fmt.str();
  }
  if (command != "simulate" && format == "csv") {
    std::cerr << "heatlab: csv output is only available for simulate\n";
    return HEATLAB_CONFIG_ERROR;
  }

  OwnedString text;
  heatlab_status s = HEATLAB_OK;
  if (command == "coeffs") {
    s = heatlab_coeffs(raw, &text.p);
  } else if (command == "simulate") {
    s = heatlab_simulate(raw, format.empty() ? "csv" : format.c_str(), &text.p);
  } else if (command == "fit") {
    s = heatlab_fit(raw, &text.p);
  } else if (command == "verify") {
    s = heatlab_verify(raw, &text.p);
  } else if (command == "relations") {
    s = heatlab_relations(raw, &text.p);
  } else if (command == "harness") {
    if (o.list) {
      OwnedString names;
      if (heatlab_status e = heatlab_harness_checks(&names.p); e != HEATLAB_OK) return report_error(e);
      std::string n = names.str();
      for (auto& c : n)
        if (c == ',') c = '\n';
      std::cout << n << "\n";
      return 0;
    }
    std::string selection;
    for (const auto& c : o.checks) selection += (selection.empty() ? "" : ",") + c;
    s = heatlab_harness(raw, selection.c_str(), &text.p);
  }
  // verdict failures still carry a report
  if (s != HEATLAB_OK && s != HEATLAB_VERDICT_FAIL) return report_error(s);
  if (int e = emit(text.str(), out); e != 0) return e;
  if (s == HEATLAB_VERDICT_FAIL) std::cerr << "heatlab: FAIL: " << heatlab_last_error() << "\n";
  return static_cast<int>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat content coefficients for Laplace-type operators with interface conditions"};
  app.set_version_flag("--version", std::string(heatlab_version()));
  app.require_subcommand(1);

  Options o;
  auto common = [&](CLI::App* sub, bool config) {
    if (config) sub->add_option("--config", o.config, "Problem configuration (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Write the output here instead of stdout");
    sub->add_option("--grid", o.grid, "Solver resolution override")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--mutate", o.mutations, "Perturb a constant, e.g. a7:*21/20 or b4:+1/10")->take_all();
  };

  auto* coeffs = app.add_subcommand("coeffs", "Closed-form beta_0..beta_3 with the per-term breakdown");
  common(coeffs, true);
  coeffs->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));

  auto* sim = app.add_subcommand("simulate", "Sample the heat content beta(t)");
  common(sim, true);
  sim->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* fit = app.add_subcommand("fit", "Fit beta_n to simulated samples");
  common(fit, true);
  fit->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));

  auto* verify = app.add_subcommand("verify", "Compare fitted and closed-form coefficients");
  common(verify, true);
  verify->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));

  auto* rel = app.add_subcommand("relations", "Check the exact relations among the universal constants");
  common(rel, false);
  rel->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));

  auto* harness = app.add_subcommand("harness", "Run the seeded property checks");
  common(harness, false);
  harness->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));
  harness->add_option("checks", o.checks, "Checks to run (default: all)");
  harness->add_flag("--list", o.list, "List the available checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : HEATLAB_CONFIG_ERROR;
  }
  for (auto* sub : app.get_subcommands()) return run(sub->get_name(), o);
  return HEATLAB_CONFIG_ERROR;
}
