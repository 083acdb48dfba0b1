// Time-evolution experiments: entropy/Fisher trajectories, the
// entropy-production identity, the decay bound, and decay-rate fitting.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oulab/verifier.hpp"

namespace oulab {

/// One sampled time point of the flow u_t = P_t u_0.
struct TrajectoryRecord {
  double t = 0.0;
  double mass = 0.0;
  double entropy = 0.0;
  double fisher = 0.0;
  double bound = 0.0;  // e^{-2t} * fisher(u_0)
  double ratio = 0.0;  // fisher / fisher(u_0); NaN when fisher(u_0) = 0
};

struct TimeGrid {
  enum class Spacing { linear, log };
  double start = 0.0;
  double stop = 3.0;
  int count = 31;
  Spacing spacing = Spacing::linear;

  std::vector<double> points() const;
  void validate() const;  // stop > start >= 0, count >= 2, log needs start > 0
};

struct ExperimentTolerances {
  double mass_drift = 1e-12;
  double entropy_monotone = 1e-12;
  double fisher_monotone = 1e-12;
  double decay_bound_rel = 1e-6;
  double entropy_production_rel = 1e-4;
  double interchange_rel = 1e-4;
  double fd_step = 1e-3;
};

struct ExperimentConfig {
  int dimension = 1;
  ChaosExpansion initial = ChaosExpansion::constant(1, 1.0);
  std::string initial_label = "uniform";
  double positivity_floor = 0.25;
  TimeGrid time_grid;
  int quadrature_order = 0;  // 0 = deg(initial) + 8 per dimension
  long node_budget = kDefaultNodeBudget;
  ExperimentTolerances tolerances;

  void validate() const;
  int effective_order() const;
  /// FD step for time derivatives: min(fd_step, grid spacing / 10).
  double effective_fd_step() const;
};

/// Raised when a density fails its nodewise positivity check during a run.
class PositivityError : public std::runtime_error {
 public:
  PositivityError(double time, Eigen::Index node_index, const Eigen::VectorXd& node,
                  double value, double floor);
  double time;
  Eigen::Index node_index;
  double value;
};

// Preset initial densities. The 1-D shapes are embedded cylindrically through
// the first coordinate when dimension > 1.
ChaosExpansion preset_uniform(int dimension);
ChaosExpansion preset_first_chaos(int dimension, double eps);   // 1 + eps x1
ChaosExpansion preset_second_chaos(int dimension, double eps);  // 1 + eps (x1^2 - 1)
ChaosExpansion preset_mixed(int dimension, double c0, double c1, double c2);

/// Evolve u_0 through the exact spectral semigroup and record the observables
/// at every configured time. Positivity is re-certified at every sample.
std::vector<TrajectoryRecord> evolve_trajectory(const ExperimentConfig& cfg);

/// d/dt Ent(u_t) = fisher(u_t): central finite differences of the entropy
/// against the recorded Fisher information at every sampled t >= fd step, plus
/// the quadrature form -integral (log u_t) L u_t of the same derivative.
IdentityReport check_entropy_production(const std::vector<TrajectoryRecord>& trajectory,
                                        const ChaosExpansion& u0, const ExperimentConfig& cfg);

/// fisher(t) <= e^{-2t} fisher(0) (1 + rel_tol) at every sampled time.
IdentityReport check_decay_bound(const std::vector<TrajectoryRecord>& trajectory,
                                 double rel_tol = 1e-6);

/// Negated least-squares slope of log fisher against t.
double fit_decay_rate(const std::vector<TrajectoryRecord>& trajectory);

/// Differentiation under the integral sign for f = u_t log u_t: central FD of
/// integral u_t log u_t against integral [(log u_t) L u_t + L u_t].
IdentityReport check_interchange(const ChaosExpansion& u0, double t,
                                 const ExperimentConfig& cfg);

}  // namespace oulab
