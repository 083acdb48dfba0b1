// Declarative run configuration: one JSON file with nested sections drives
// both the identity suite and the evolution experiments. Every tolerance,
// grid order, preset, and time grid lives here; the defaults below are the
// complete defaults table.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "oulab/experiments.hpp"

namespace oulab {

inline constexpr std::uint64_t kDefaultSeed = 20260810;

/// Configuration or environment problem; the CLI maps this to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialDensity {
  std::string label;
  ChaosExpansion expansion = ChaosExpansion::constant(1, 1.0);
};

/// Random-case suite over several dimensions.
struct CaseSuite {
  int cases = 0;
  std::vector<int> dimensions;
  int max_degree = 0;
  double tolerance = 0.0;
};

/// Random-case suite additionally swept over times.
struct TimedSuite {
  int cases = 0;
  std::vector<int> dimensions;
  int max_degree = 0;
  std::vector<double> times;
  double tolerance = 0.0;
};

struct BochnerSuite {
  int cases = 30;
  std::vector<int> dimensions{1, 2};
  int max_degree = 3;
  std::vector<double> times{0.0, 0.25, 1.0};
  double tolerance = 1e-8;
  double constant_min = 1.0;
  double constant_max = 2.0;
  double perturbation_sup = 0.3;
  double floor = 0.2;
};

struct SemigroupLawSuite {
  int cases = 50;
  std::vector<int> dimensions{1, 2, 3};
  int max_degree = 4;
  std::vector<std::array<double, 2>> time_pairs{{0.3, 0.7}, {0.0, 1.0}, {0.5, 0.5}};
  double tolerance = 1e-12;
};

struct BackendSuite {
  std::vector<int> dimensions{1, 2};
  int max_degree = 6;
  std::vector<double> times{0.1, 0.5, 1.0};
  double tolerance = 1e-10;
};

struct ContractionSuite {
  std::vector<double> ps{2.0, 4.0};
  std::vector<double> times{0.5, 1.0};
  double tolerance = 1e-12;
};

struct EntropyBoundSuite {
  std::vector<double> times{0.0, 0.5, 1.0};
  double tolerance = 1e-10;
  double floor = 0.25;
};

struct RightContinuitySuite {
  double sample_time = 1e-4;
  double tolerance = 1e-2;
  double floor = 0.25;
};

struct BochnerFdSuite {
  int cases = 5;
  std::vector<int> dimensions{1, 2};
  int max_degree = 3;
  std::vector<double> times{0.25, 1.0};
  double fd_step = 1e-4;
  double tolerance = 1e-6;
};

struct VerifyConfig {
  std::uint64_t seed = kDefaultSeed;
  double tolerance_scale = 1.0;
  long node_budget = kDefaultNodeBudget;

  CaseSuite weitzenbock{100, {1, 2, 3}, 4, 1e-10};
  BochnerSuite bochner_entropy;
  CaseSuite integration_by_parts{100, {1, 2, 3}, 4, 1e-10};
  CaseSuite generator_composition{100, {1, 2, 3}, 4, 1e-10};
  SemigroupLawSuite semigroup_law;
  TimedSuite gradient_commutation{50, {1, 2, 3}, 4, {0.1, 0.5, 1.0}, 1e-12};
  TimedSuite projection_commutation{50, {2, 3}, 4, {0.25, 0.7}, 1e-14};
  TimedSuite mass_invariance{50, {1, 2, 3}, 4, {0.1, 1.0, 3.0}, 1e-12};
  TimedSuite semigroup_symmetry{50, {1, 2, 3}, 3, {0.25, 0.7}, 1e-10};
  BackendSuite backend_agreement;
  ContractionSuite contraction;
  EntropyBoundSuite entropy_bound;
  RightContinuitySuite fisher_right_continuity;
  BochnerFdSuite bochner_dt_fd;

  /// Densities the preset-based checks (contraction, entropy bound, right
  /// continuity) run over.
  std::vector<InitialDensity> presets;
};

struct EvolveConfig {
  std::uint64_t seed = kDefaultSeed;
  double tolerance_scale = 1.0;
  ExperimentConfig experiment;
};

/// uniform, first-chaos(0.01), second-chaos(0.01), mixed(1.5,0.2,0.1).
std::vector<InitialDensity> default_preset_set(int dimension = 1);

/// Parse and validate an initial-density spec: either
/// {"preset": "uniform" | "first-chaos" | "second-chaos" | "mixed", ...params}
/// or {"coefficients": [{"index": [..], "value": ..}, ..]}.
InitialDensity parse_initial_density(const nlohmann::json& spec, int dimension,
                                     const std::string& where);

/// Read and parse a JSON config file; IO and syntax problems become
/// ConfigError with the file name and parser position.
nlohmann::json load_config_file(const std::filesystem::path& path);

VerifyConfig parse_verify_config(const nlohmann::json& root, long node_budget);
EvolveConfig parse_evolve_config(const nlohmann::json& root, long node_budget);

/// Optional top-level "out" directory.
std::optional<std::string> config_out_dir(const nlohmann::json& root);

/// OU_LAB_NODE_BUDGET override, default budget otherwise; malformed values
/// are a ConfigError.
long node_budget_from_env();

}  // namespace oulab
