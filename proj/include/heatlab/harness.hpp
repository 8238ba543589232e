#pragma once

// Property suites over seeded random admissible inputs: doubling, the
// endomorphism shift, warped reduction, transmission identities, separation of
// variables and the harmonic unit. Each check also records which universal
// constants it exercised (nonzero invariant) for the coverage assertion.

#include "heatlab/config.hpp"
#include "heatlab/constants.hpp"
#include "heatlab/problem.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace heatlab {

struct HarnessOptions {
  std::uint64_t seed = 1;
  int degree = 64;  // spectral degree for matched-grid solver identities
  ConstantTable constants = ConstantTable::published();
  bool solver_checks = true;
};

struct CheckOutcome {
  std::string name;
  bool pass = true;
  int cases = 0;
  double worst = 0.0;      // largest discrepancy divided by its tolerance
  std::vector<std::string> failures;  // description plus the replayable problem
  std::set<std::string> touched;
};

/// Deterministic uniform numbers in [-1, 1].
class SeededRandom {
 public:
  explicit SeededRandom(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL) {}
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * 0.5 * (uniform() + 1.0); }
  int integer(int lo, int hi);

 private:
  std::uint64_t state_;
};

CheckOutcome check_doubling_b1(const HarnessOptions& opts, int cases = 20);
CheckOutcome check_epsilon_shift(const HarnessOptions& opts);
CheckOutcome check_warped_reduction(const HarnessOptions& opts);
CheckOutcome check_b2_identities(const HarnessOptions& opts);
CheckOutcome check_separation_of_variables(const HarnessOptions& opts);
CheckOutcome check_harmonic_unit(const HarnessOptions& opts, int cases = 10);
/// The glued problems behind check_harmonic_unit: phi = 1, U = 0 at r = 0 and r = 1.
std::vector<Problem> harmonic_unit_cases(const HarnessOptions& opts, int cases = 10);
/// Every nonzero constant of the table appears in some outcome's touched set.
CheckOutcome check_coverage(const std::vector<CheckOutcome>& outcomes, const ConstantTable& table);

std::vector<std::string> harness_check_names();
/// Runs the selected checks (all when empty); "coverage" is evaluated over the others.
std::vector<CheckOutcome> run_harness(const HarnessOptions& opts, const std::vector<std::string>& selection = {});

Json outcome_json(const CheckOutcome& o);

/// Interval partner of a mode-0 warped problem: each side's operator becomes
/// the interval operator acting on theta-independent sections (connection
/// omega_r + F'/2, endomorphism shifted accordingly), rho becomes exp(F) rho and
/// the boundary endomorphisms absorb the change of normal derivative. Then
/// beta_n(problem) = (2 pi)^d beta_n(reduced_problem(problem)).
Problem reduced_problem(const Problem& warped);

}  // namespace heatlab
