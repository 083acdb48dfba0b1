#include "oulab/suite.hpp"

#include <cmath>
#include <map>

namespace oulab {

namespace {

/// Max residuals over the per-case reports of one suite; node counts add up.
IdentityReport aggregate(const std::vector<IdentityReport>& cases, std::string name,
                         double tolerance) {
  IdentityReport total;
  total.identity_name = std::move(name);
  total.tolerance = tolerance;
  total.pass = true;
  for (const IdentityReport& r : cases) {
    total.max_abs_residual = std::max(total.max_abs_residual, r.max_abs_residual);
    total.max_rel_residual = std::max(total.max_rel_residual, r.max_rel_residual);
    total.nodes_checked += r.nodes_checked;
    total.pass = total.pass && r.pass;
  }
  return total;
}

int cycle_dimension(const std::vector<int>& dims, int i) {
  return dims[static_cast<std::size_t>(i) % dims.size()];
}

QuadratureGrid& grid_for(std::map<std::pair<int, int>, QuadratureGrid>& cache, int dimension,
                         int order, long budget) {
  auto [it, inserted] = cache.try_emplace({dimension, order});
  if (inserted) it->second = gauss_hermite_grid(dimension, order, budget);
  return it->second;
}

}  // namespace

bool VerifyOutcome::all_pass() const {
  for (const IdentityReport& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

nlohmann::json VerifyOutcome::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const IdentityReport& r : reports) checks.push_back(identity_report_to_json(r));
  return nlohmann::json{{"seed", seed},
                        {"tolerance_scale", tolerance_scale},
                        {"all_pass", all_pass()},
                        {"checks", checks}};
}

VerifyOutcome run_verify_suite(const VerifyConfig& cfg) {
  VerifyOutcome outcome;
  outcome.seed = cfg.seed;
  outcome.tolerance_scale = cfg.tolerance_scale;
  const double scale = cfg.tolerance_scale;
  std::map<std::pair<int, int>, QuadratureGrid> grids;

  {  // Weitzenbock formula on random polynomials.
    const CaseSuite& s = cfg.weitzenbock;
    Rng rng = derive_rng(cfg.seed, "weitzenbock");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      const QuadratureGrid& grid = grid_for(grids, n, s.max_degree + 2, cfg.node_budget);
      cases.push_back(check_weitzenbock(f, grid, s.tolerance * scale));
    }
    outcome.reports.push_back(aggregate(cases, "weitzenbock", s.tolerance * scale));
  }

  {  // Bochner identity for the Fisher integrand on random valid densities.
    const BochnerSuite& s = cfg.bochner_entropy;
    Rng rng = derive_rng(cfg.seed, "bochner-entropy");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const QuadratureGrid& grid = grid_for(grids, n, s.max_degree + 8, cfg.node_budget);
      const ChaosExpansion u0 = random_valid_density(rng, n, s.max_degree, grid, s.constant_min,
                                                     s.constant_max, s.perturbation_sup);
      for (double t : s.times) {
        const ChaosExpansion ut = apply_semigroup(u0, t);
        const PositivityCertificate cert = check_positivity(ut, grid, s.floor);
        cases.push_back(check_bochner_entropy(u0, t, grid, cert, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "bochner-entropy", s.tolerance * scale));
  }

  {  // Adjointness of L under the Gaussian measure.
    const CaseSuite& s = cfg.integration_by_parts;
    Rng rng = derive_rng(cfg.seed, "integration-by-parts");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      const ChaosExpansion g = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      const QuadratureGrid& grid = grid_for(grids, n, s.max_degree + 1, cfg.node_budget);
      cases.push_back(check_integration_by_parts(f, g, grid, s.tolerance * scale));
    }
    outcome.reports.push_back(aggregate(cases, "integration-by-parts", s.tolerance * scale));
  }

  {  // L = -divergence(gradient), three evaluation routes.
    const CaseSuite& s = cfg.generator_composition;
    Rng rng = derive_rng(cfg.seed, "generator-composition");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      cases.push_back(check_generator_composition(f, s.tolerance * scale));
    }
    outcome.reports.push_back(aggregate(cases, "generator-composition", s.tolerance * scale));
  }

  {  // P_s P_t = P_{s+t}.
    const SemigroupLawSuite& s = cfg.semigroup_law;
    Rng rng = derive_rng(cfg.seed, "semigroup-law");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      for (const auto& [a, b] : s.time_pairs) {
        cases.push_back(check_semigroup_law(f, a, b, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "semigroup-law", s.tolerance * scale));
  }

  {  // grad P_t = e^{-t} P_t grad.
    const TimedSuite& s = cfg.gradient_commutation;
    Rng rng = derive_rng(cfg.seed, "gradient-commutation");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      for (double t : s.times) {
        cases.push_back(check_gradient_commutation(f, t, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "gradient-commutation", s.tolerance * scale));
  }

  {  // Conditional expectation onto leading coordinates commutes with P_t.
    const TimedSuite& s = cfg.projection_commutation;
    Rng rng = derive_rng(cfg.seed, "projection-commutation");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = std::max(2, cycle_dimension(s.dimensions, i));
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      const int retained = rng.uniform_int(1, n - 1);
      for (double t : s.times) {
        cases.push_back(check_projection_commutes(f, retained, t, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "projection-commutation", s.tolerance * scale));
  }

  {  // The constant coefficient is untouched by the flow.
    const TimedSuite& s = cfg.mass_invariance;
    Rng rng = derive_rng(cfg.seed, "mass-invariance");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      for (double t : s.times) {
        cases.push_back(check_mass_invariance(f, t, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "mass-invariance", s.tolerance * scale));
  }

  {  // Self-adjointness of P_t.
    const TimedSuite& s = cfg.semigroup_symmetry;
    Rng rng = derive_rng(cfg.seed, "semigroup-symmetry");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const ChaosExpansion u = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      const ChaosExpansion v = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      const QuadratureGrid& grid = grid_for(grids, n, s.max_degree + 1, cfg.node_budget);
      for (double t : s.times) {
        cases.push_back(check_semigroup_symmetry(u, v, t, grid, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "semigroup-symmetry", s.tolerance * scale));
  }

  {  // Spectral vs Mehler-quadrature backend.
    const BackendSuite& s = cfg.backend_agreement;
    Rng rng = derive_rng(cfg.seed, "backend-agreement");
    std::vector<IdentityReport> cases;
    for (int n : s.dimensions) {
      const ChaosExpansion f = random_expansion(rng, n, s.max_degree, -1.0, 1.0);
      for (double t : s.times) {
        cases.push_back(check_backend_agreement(f, t, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "backend-agreement", s.tolerance * scale));
  }

  {  // L^p contraction over the preset set.
    const ContractionSuite& s = cfg.contraction;
    std::vector<IdentityReport> cases;
    double p_max = 2.0;
    for (double p : s.ps) p_max = std::max(p_max, p);
    for (const InitialDensity& preset : cfg.presets) {
      const int degree = preset.expansion.degree();
      const int order = static_cast<int>(std::ceil((p_max * degree + 1.0) / 2.0)) + 2;
      const QuadratureGrid& grid =
          grid_for(grids, preset.expansion.dimension(), order, cfg.node_budget);
      for (double p : s.ps) {
        for (double t : s.times) {
          cases.push_back(check_contraction(preset.expansion, p, t, grid, s.tolerance * scale));
        }
      }
    }
    outcome.reports.push_back(aggregate(cases, "contraction", s.tolerance * scale));
  }

  {  // Ent(u) <= 1 - mass(u) along the flow of every preset.
    const EntropyBoundSuite& s = cfg.entropy_bound;
    std::vector<IdentityReport> cases;
    for (const InitialDensity& preset : cfg.presets) {
      const QuadratureGrid& grid =
          grid_for(grids, preset.expansion.dimension(),
                   default_functional_order(preset.expansion), cfg.node_budget);
      for (double t : s.times) {
        const ChaosExpansion ut = apply_semigroup(preset.expansion, t);
        const PositivityCertificate cert = check_positivity(ut, grid, s.floor);
        cases.push_back(check_entropy_bound(ut, grid, cert, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "entropy-bound", s.tolerance * scale));
  }

  {  // Small-t sampling of Fisher right-continuity.
    const RightContinuitySuite& s = cfg.fisher_right_continuity;
    std::vector<IdentityReport> cases;
    for (const InitialDensity& preset : cfg.presets) {
      const QuadratureGrid& grid =
          grid_for(grids, preset.expansion.dimension(),
                   default_functional_order(preset.expansion), cfg.node_budget);
      cases.push_back(check_fisher_right_continuity(preset.expansion, grid, s.floor,
                                                    s.sample_time, s.tolerance * scale));
    }
    outcome.reports.push_back(aggregate(cases, "fisher-right-continuity", s.tolerance * scale));
  }

  {  // FD cross-check of the analytic time derivative in the Bochner identity.
    const BochnerFdSuite& s = cfg.bochner_dt_fd;
    Rng rng = derive_rng(cfg.seed, "bochner-dt-fd");
    std::vector<IdentityReport> cases;
    for (int i = 0; i < s.cases; ++i) {
      const int n = cycle_dimension(s.dimensions, i);
      const QuadratureGrid& grid = grid_for(grids, n, s.max_degree + 8, cfg.node_budget);
      const ChaosExpansion u0 = random_valid_density(rng, n, s.max_degree, grid, 1.0, 2.0, 0.3);
      for (double t : s.times) {
        const ChaosExpansion ut = apply_semigroup(u0, t);
        const PositivityCertificate cert = check_positivity(ut, grid, 0.2);
        cases.push_back(
            check_bochner_time_derivative_fd(u0, t, grid, cert, s.fd_step, s.tolerance * scale));
      }
    }
    outcome.reports.push_back(aggregate(cases, "bochner-dt-fd", s.tolerance * scale));
  }

  return outcome;
}

bool EvolveOutcome::all_pass() const {
  bool ok = mass_conserved && entropy_monotone && fisher_monotone && decay_bound.pass;
  if (entropy_production) ok = ok && entropy_production->pass;
  if (interchange) ok = ok && interchange->pass;
  return ok;
}

nlohmann::json EvolveOutcome::to_json() const {
  nlohmann::json j{{"seed", seed},
                   {"initial", initial_label},
                   {"dimension", dimension},
                   {"time_points", static_cast<int>(records.size())},
                   {"worst_bound_margin", worst_bound_margin},
                   {"mass_conserved", mass_conserved},
                   {"entropy_monotone", entropy_monotone},
                   {"fisher_monotone", fisher_monotone},
                   {"decay_bound", identity_report_to_json(decay_bound)},
                   {"all_pass", all_pass()}};
  j["fitted_exponent"] =
      fitted_exponent ? nlohmann::json(*fitted_exponent) : nlohmann::json(nullptr);
  j["entropy_production"] = entropy_production
                                ? identity_report_to_json(*entropy_production)
                                : nlohmann::json(nullptr);
  j["interchange"] =
      interchange ? identity_report_to_json(*interchange) : nlohmann::json(nullptr);
  if (!records.empty()) {
    j["fisher_initial"] = records.front().bound * std::exp(2.0 * records.front().t);
  }
  return j;
}

EvolveOutcome run_evolve(const EvolveConfig& cfg) {
  ExperimentConfig experiment = cfg.experiment;
  ExperimentTolerances& tol = experiment.tolerances;
  tol.mass_drift *= cfg.tolerance_scale;
  tol.entropy_monotone *= cfg.tolerance_scale;
  tol.fisher_monotone *= cfg.tolerance_scale;
  tol.decay_bound_rel *= cfg.tolerance_scale;
  tol.entropy_production_rel *= cfg.tolerance_scale;
  tol.interchange_rel *= cfg.tolerance_scale;

  EvolveOutcome outcome;
  outcome.seed = cfg.seed;
  outcome.initial_label = experiment.initial_label;
  outcome.dimension = experiment.dimension;
  outcome.records = evolve_trajectory(experiment);
  const std::vector<TrajectoryRecord>& recs = outcome.records;

  outcome.mass_conserved = true;
  outcome.entropy_monotone = true;
  outcome.fisher_monotone = true;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (std::abs(recs[k].mass - recs[0].mass) > tol.mass_drift) outcome.mass_conserved = false;
    if (k > 0) {
      if (recs[k].entropy < recs[k - 1].entropy - tol.entropy_monotone) {
        outcome.entropy_monotone = false;
      }
      if (recs[k].fisher > recs[k - 1].fisher + tol.fisher_monotone) {
        outcome.fisher_monotone = false;
      }
    }
  }

  outcome.decay_bound = check_decay_bound(recs, tol.decay_bound_rel);
  // Seed the max with the first margin so an all-negative sequence reports
  // its true (negative) worst value.
  outcome.worst_bound_margin =
      recs[0].bound > 0.0 ? (recs[0].fisher - recs[0].bound) / recs[0].bound : 0.0;
  for (const TrajectoryRecord& rec : recs) {
    const double margin =
        rec.bound > 0.0 ? (rec.fisher - rec.bound) / rec.bound : rec.fisher - rec.bound;
    outcome.worst_bound_margin = std::max(outcome.worst_bound_margin, margin);
  }

  if (recs.size() >= 3) {
    outcome.entropy_production = check_entropy_production(recs, experiment.initial, experiment);
  }

  const double h = experiment.effective_fd_step();
  const double mid_time = recs[recs.size() / 2].t;
  if (mid_time >= h) {
    outcome.interchange = check_interchange(experiment.initial, mid_time, experiment);
  }

  bool all_fisher_positive = true;
  for (const TrajectoryRecord& rec : recs) {
    if (!(rec.fisher > 0.0)) all_fisher_positive = false;
  }
  if (all_fisher_positive) outcome.fitted_exponent = fit_decay_rate(recs);

  return outcome;
}

}  // namespace oulab
