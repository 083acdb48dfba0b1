// Acceptance suite: one pass/fail line per criterion. Usage:
//   oulab_acceptance <path-to-oulab-cli>
// The CLI path is needed for the byte-level determinism criterion.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "oulab/suite.hpp"

using namespace oulab;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& label, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, label.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_residual(double value) {
  std::ostringstream oss;
  oss.precision(3);
  oss << std::scientific << value;
  return oss.str();
}

// 1. Weitzenbock residual <= 1e-10 for 100 random polynomials, deg <= 4,
//    n in {1,2,3}; runtime <= 10 s.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = derive_rng(kDefaultSeed, "acceptance-weitzenbock");
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const ChaosExpansion f = random_expansion(rng, n, 4, -1.0, 1.0);
    const QuadratureGrid grid = gauss_hermite_grid(n, 6);
    const IdentityReport r = check_weitzenbock(f, grid, 1e-10);
    worst = std::max(worst, r.max_rel_residual);
    pass = pass && r.pass;
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed <= 10.0;
  report(1, pass, "Weitzenbock suite, 100 random polynomials",
         "max rel residual " + format_residual(worst) + " vs 1e-10, " +
             format_residual(elapsed) + " s vs 10 s");
}

// 2. Bochner-entropy residual <= 1e-8 for 30 random valid densities and
//    t in {0, 0.25, 1.0}; runtime <= 30 s.
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = derive_rng(kDefaultSeed, "acceptance-bochner");
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 30; ++i) {
    const int n = 1 + i % 2;
    const QuadratureGrid grid = gauss_hermite_grid(n, 11);
    const ChaosExpansion u0 = random_valid_density(rng, n, 3, grid, 1.0, 2.0, 0.3);
    for (double t : {0.0, 0.25, 1.0}) {
      const ChaosExpansion ut = apply_semigroup(u0, t);
      const PositivityCertificate cert = check_positivity(ut, grid, 0.2);
      const IdentityReport r = check_bochner_entropy(u0, t, grid, cert, 1e-8);
      worst = std::max(worst, r.max_rel_residual);
      pass = pass && r.pass;
    }
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed <= 30.0;
  report(2, pass, "Bochner-entropy suite, 30 random valid densities",
         "max rel residual " + format_residual(worst) + " vs 1e-8, " +
             format_residual(elapsed) + " s vs 30 s");
}

// 3. |central-FD dEnt/dt - fisher| <= 1e-4 * fisher for mixed(1.5, 0.2, 0.1)
//    at t in {0.25, 0.5, 1.0}, h = 1e-3.
void criterion_3() {
  const ChaosExpansion u0 = preset_mixed(1, 1.5, 0.2, 0.1);
  const QuadratureGrid grid = gauss_hermite_grid(1, default_functional_order(u0));
  const double h = 1e-3;
  const auto entropy_at = [&](double t) {
    const ChaosExpansion ut = apply_semigroup(u0, t);
    return entropy(ut, grid, check_positivity(ut, grid, 0.5));
  };
  bool pass = true;
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0}) {
    const ChaosExpansion ut = apply_semigroup(u0, t);
    const double info = fisher(ut, grid, check_positivity(ut, grid, 0.5));
    const double fd = (entropy_at(t + h) - entropy_at(t - h)) / (2.0 * h);
    const double rel = std::abs(fd - info) / info;
    worst = std::max(worst, rel);
    pass = pass && rel <= 1e-4;
  }
  report(3, pass, "entropy production dEnt/dt = Fisher for mixed(1.5,0.2,0.1)",
         "max |FD - fisher|/fisher " + format_residual(worst) + " vs 1e-4");
}

// 4. fisher(t) <= e^{-2t} fisher(0) (1 + 1e-6) on [0,3] x 31 for the three
//    presets; first-chaos ratio additionally within 0.1% of e^{-2t}.
void criterion_4() {
  bool pass = true;
  std::string detail;
  const std::vector<std::pair<std::string, ChaosExpansion>> presets = {
      {"first-chaos(0.01)", preset_first_chaos(1, 0.01)},
      {"second-chaos(0.01)", preset_second_chaos(1, 0.01)},
      {"mixed(1.5,0.2,0.1)", preset_mixed(1, 1.5, 0.2, 0.1)},
  };
  for (const auto& [label, u0] : presets) {
    ExperimentConfig cfg;
    cfg.dimension = 1;
    cfg.initial = u0;
    cfg.initial_label = label;
    cfg.positivity_floor = 0.5;
    const std::vector<TrajectoryRecord> records = evolve_trajectory(cfg);
    double worst_margin = -1.0;
    double worst_tightness = 0.0;
    for (const TrajectoryRecord& rec : records) {
      if (rec.bound > 0.0) {
        worst_margin = std::max(worst_margin, rec.fisher / rec.bound - 1.0);
      }
      if (label.rfind("first-chaos", 0) == 0) {
        worst_tightness = std::max(
            worst_tightness, std::abs(rec.ratio / std::exp(-2.0 * rec.t) - 1.0));
      }
    }
    bool preset_ok = worst_margin <= 1e-6;
    if (label.rfind("first-chaos", 0) == 0) preset_ok = preset_ok && worst_tightness <= 1e-3;
    pass = pass && preset_ok;
    if (!detail.empty()) detail += "; ";
    detail += label + " margin " + format_residual(worst_margin);
    if (label.rfind("first-chaos", 0) == 0) {
      detail += ", tightness " + format_residual(worst_tightness) + " vs 1e-3";
    }
  }
  report(4, pass, "decay bound fisher(t) <= e^{-2t} fisher(0) (1 + 1e-6)", detail);
}

// 5. Fitted exponents: first-chaos(0.01) = 2.00 +/- 0.01,
//    second-chaos(0.01) = 4.00 +/- 0.05.
void criterion_5() {
  const auto fit_for = [](const ChaosExpansion& u0) {
    ExperimentConfig cfg;
    cfg.dimension = 1;
    cfg.initial = u0;
    cfg.positivity_floor = 0.5;
    return fit_decay_rate(evolve_trajectory(cfg));
  };
  const double first = fit_for(preset_first_chaos(1, 0.01));
  const double second = fit_for(preset_second_chaos(1, 0.01));
  const bool pass = std::abs(first - 2.0) <= 0.01 && std::abs(second - 4.0) <= 0.05;
  std::ostringstream oss;
  oss.precision(6);
  oss << "first-chaos " << first << " vs 2.00 +/- 0.01, second-chaos " << second
      << " vs 4.00 +/- 0.05";
  report(5, pass, "decay-rate fits", oss.str());
}

// 6. Operator algebra: L = -div(grad) and adjointness to 1e-10 on 100 random
//    pairs; semigroup law, gradient commutation, projection commutation, and
//    mass invariance coefficient-wise to 1e-12.
void criterion_6() {
  Rng rng = derive_rng(kDefaultSeed, "acceptance-algebra");
  bool pass = true;
  double worst_quad = 0.0;
  double worst_coeff = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const ChaosExpansion f = random_expansion(rng, n, 4, -1.0, 1.0);
    const ChaosExpansion g = random_expansion(rng, n, 4, -1.0, 1.0);
    const QuadratureGrid grid = gauss_hermite_grid(n, 5);

    const IdentityReport composition = check_generator_composition(f, 1e-10);
    const IdentityReport adjoint = check_integration_by_parts(f, g, grid, 1e-10);
    worst_quad = std::max({worst_quad, composition.max_rel_residual, adjoint.max_rel_residual});
    pass = pass && composition.pass && adjoint.pass;

    const IdentityReport law = check_semigroup_law(f, 0.3, 0.7, 1e-12);
    const IdentityReport commute = check_gradient_commutation(f, 0.5, 1e-12);
    const IdentityReport mass_inv = check_mass_invariance(f, 1.0, 1e-12);
    worst_coeff = std::max({worst_coeff, law.max_rel_residual, commute.max_rel_residual,
                            mass_inv.max_rel_residual});
    pass = pass && law.pass && commute.pass && mass_inv.pass;
    if (n >= 2) {
      const IdentityReport projection = check_projection_commutes(f, n - 1, 0.7, 1e-12);
      worst_coeff = std::max(worst_coeff, projection.max_rel_residual);
      pass = pass && projection.pass;
    }
  }
  report(6, pass, "operator algebra on 100 random pairs",
         "max quadrature residual " + format_residual(worst_quad) +
             " vs 1e-10, max coefficient residual " + format_residual(worst_coeff) +
             " vs 1e-12");
}

// 7. Spectral vs Mehler-quadrature semigroup to 1e-10, deg <= 6,
//    t in {0.1, 0.5, 1.0}, n in {1, 2}.
void criterion_7() {
  Rng rng = derive_rng(kDefaultSeed, "acceptance-backend");
  bool pass = true;
  double worst = 0.0;
  for (int n : {1, 2}) {
    const ChaosExpansion f = random_expansion(rng, n, 6, -1.0, 1.0);
    for (double t : {0.1, 0.5, 1.0}) {
      const IdentityReport r = check_backend_agreement(f, t, 1e-10);
      worst = std::max(worst, r.max_rel_residual);
      pass = pass && r.pass;
    }
  }
  report(7, pass, "spectral vs Mehler-quadrature backends, deg <= 6",
         "max rel residual " + format_residual(worst) + " vs 1e-10");
}

// 8. ||P_t u||_p <= ||u||_p for p in {2,4} and Ent(u) <= 1 - mass(u) on the
//    full preset set; one-sided tolerances 1e-12 and 1e-10.
void criterion_8() {
  bool pass = true;
  double worst_contraction = 0.0;
  double worst_entropy = 0.0;
  for (const InitialDensity& preset : default_preset_set()) {
    const int deg = preset.expansion.degree();
    const QuadratureGrid norm_grid = gauss_hermite_grid(1, 2 * deg + 3);
    for (double p : {2.0, 4.0}) {
      for (double t : {0.5, 1.0}) {
        const IdentityReport r =
            check_contraction(preset.expansion, p, t, norm_grid, 1e-12);
        worst_contraction = std::max(worst_contraction, r.max_rel_residual);
        pass = pass && r.pass;
      }
    }
    const QuadratureGrid grid =
        gauss_hermite_grid(1, default_functional_order(preset.expansion));
    for (double t : {0.0, 0.5, 1.0}) {
      const ChaosExpansion ut = apply_semigroup(preset.expansion, t);
      const PositivityCertificate cert = check_positivity(ut, grid, 0.25);
      const IdentityReport r = check_entropy_bound(ut, grid, cert, 1e-10);
      worst_entropy = std::max(worst_entropy, r.max_rel_residual);
      pass = pass && r.pass;
    }
  }
  report(8, pass, "Lp contraction and Ent <= 1 - mass over the preset set",
         "worst one-sided violations " + format_residual(worst_contraction) + " vs 1e-12, " +
             format_residual(worst_entropy) + " vs 1e-10");
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Repeated `evolve` runs with identical config and seed produce
//    byte-identical CSV.
void criterion_9(const char* cli_path) {
  if (!cli_path) {
    report(9, false, "evolve determinism", "no CLI path given on the command line");
    return;
  }
  const std::filesystem::path scratch =
      std::filesystem::temp_directory_path() /
      ("oulab-acceptance-" + std::to_string(getpid()));
  std::filesystem::create_directories(scratch);
  const std::filesystem::path cfg_path = scratch / "config.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
  "seed": 424242,
  "evolve": {
    "dimension": 1,
    "initial": {"preset": "mixed", "c0": 1.5, "c1": 0.2, "c2": 0.1},
    "floor": 0.5,
    "time_grid": {"start": 0.0, "stop": 3.0, "count": 31, "spacing": "linear"}
  }
})";
  }
  const std::string base = std::string("'") + cli_path + "' evolve '" + cfg_path.string() + "'";
  const int rc_a =
      run_command(base + " --out '" + (scratch / "a").string() + "' > /dev/null 2>&1");
  const int rc_b =
      run_command(base + " --out '" + (scratch / "b").string() + "' > /dev/null 2>&1");
  const std::string csv_a = slurp(scratch / "a" / "trajectory.csv");
  const std::string csv_b = slurp(scratch / "b" / "trajectory.csv");
  const bool pass = rc_a == 0 && rc_b == 0 && !csv_a.empty() && csv_a == csv_b;
  report(9, pass, "evolve determinism: byte-identical CSV across reruns",
         "exit codes " + std::to_string(rc_a) + "/" + std::to_string(rc_b) + ", " +
             std::to_string(csv_a.size()) + " bytes compared");
  std::filesystem::remove_all(scratch);
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argc > 1 ? argv[1] : nullptr);
  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
