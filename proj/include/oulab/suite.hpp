// Orchestration of the configured check suites and evolution runs, producing
// aggregated reports ready for serialization.
#pragma once

#include "oulab/config.hpp"
#include "oulab/random.hpp"
#include "oulab/reporting.hpp"

namespace oulab {

struct VerifyOutcome {
  std::uint64_t seed = 0;
  double tolerance_scale = 1.0;
  std::vector<IdentityReport> reports;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Run every configured identity suite; each entry aggregates the residuals
/// of all its seeded random cases.
VerifyOutcome run_verify_suite(const VerifyConfig& cfg);

struct EvolveOutcome {
  std::uint64_t seed = 0;
  std::string initial_label;
  int dimension = 1;
  std::vector<TrajectoryRecord> records;
  std::optional<double> fitted_exponent;  // absent when fisher vanishes
  double worst_bound_margin = 0.0;        // max_t (fisher - bound)/bound, <= 0 when satisfied
  bool mass_conserved = false;
  bool entropy_monotone = false;
  bool fisher_monotone = false;
  IdentityReport decay_bound;
  std::optional<IdentityReport> entropy_production;  // needs >= 3 time points
  std::optional<IdentityReport> interchange;         // at the mid-trajectory time

  bool all_pass() const;
  nlohmann::json to_json() const;
};

EvolveOutcome run_evolve(const EvolveConfig& cfg);

}  // namespace oulab
