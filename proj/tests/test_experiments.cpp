#include <doctest.h>

#include <cmath>

#include "oulab/experiments.hpp"
#include "test_helpers.hpp"

using namespace oulab;
using test::expansion;
using test::idx;

namespace {

ExperimentConfig config_for(const ChaosExpansion& initial, double floor, int count,
                            double stop = 3.0) {
  ExperimentConfig cfg;
  cfg.dimension = initial.dimension();
  cfg.initial = initial;
  cfg.positivity_floor = floor;
  cfg.time_grid.start = 0.0;
  cfg.time_grid.stop = stop;
  cfg.time_grid.count = count;
  return cfg;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("time grids") {
  TimeGrid grid;
  grid.start = 0.0;
  grid.stop = 3.0;
  grid.count = 31;
  const std::vector<double> pts = grid.points();
  REQUIRE(pts.size() == 31);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 3.0);
  CHECK(pts[1] == doctest::Approx(0.1).epsilon(1e-15));

  TimeGrid log_grid;
  log_grid.start = 0.1;
  log_grid.stop = 10.0;
  log_grid.count = 3;
  log_grid.spacing = TimeGrid::Spacing::log;
  const std::vector<double> log_pts = log_grid.points();
  CHECK(log_pts[1] == doctest::Approx(1.0).epsilon(1e-12));

  TimeGrid bad = grid;
  bad.stop = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = grid;
  bad.count = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = grid;
  bad.start = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = grid;
  bad.spacing = TimeGrid::Spacing::log;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // log spacing from t = 0
}

TEST_CASE("presets expand as documented") {
  CHECK(preset_uniform(2).coefficient(idx({0, 0})) == 1.0);
  CHECK(preset_first_chaos(1, 0.01).coefficient(idx({1})) == 0.01);
  CHECK(preset_second_chaos(1, 0.01).coefficient(idx({2})) ==
        doctest::Approx(0.01 * std::sqrt(2.0)).epsilon(1e-15));
  const ChaosExpansion mixed = preset_mixed(3, 1.5, 0.2, 0.1);
  CHECK(mixed.coefficient(idx({0, 0, 0})) == 1.5);
  CHECK(mixed.coefficient(idx({1, 0, 0})) == 0.2);
  CHECK(mixed.coefficient(idx({2, 0, 0})) == doctest::Approx(0.1 * std::sqrt(2.0)));
  // A preset embedded in n = 3 evaluates like its 1-D shape.
  CHECK(evaluate_expansion(mixed, (Eigen::VectorXd(3) << 1.0, 5.0, -7.0).finished()) ==
        doctest::Approx(1.5 + 0.2 + 0.1 * (1.0 - 1.0)).epsilon(1e-13));
}

TEST_CASE("uniform initial data gives a flat trajectory") {
  const auto records = evolve_trajectory(config_for(preset_uniform(1), 0.5, 5));
  REQUIRE(records.size() == 5);
  for (const TrajectoryRecord& rec : records) {
    CHECK(rec.mass == 1.0);
    CHECK(rec.entropy == 0.0);
    CHECK(rec.fisher == 0.0);
    CHECK(rec.bound == 0.0);
    CHECK(std::isnan(rec.ratio));
  }
}

TEST_CASE("first-chaos fisher decays like e^{-2t}") {
  // Frozen from 40-digit evaluations of integral eps^2 e^{-2t}/(1 + eps e^{-t} x) dgamma.
  const double expected[] = {1.0001000300150105e-04, 3.6789297619365284e-05,
                             1.3533711487486916e-05};
  ExperimentConfig cfg = config_for(preset_first_chaos(1, 0.01), 0.5, 3, 1.0);
  const auto records = evolve_trajectory(cfg);  // t = 0, 0.5, 1
  REQUIRE(records.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(records[k].fisher == doctest::Approx(expected[k]).epsilon(1e-9));
    CHECK(records[k].fisher ==
          doctest::Approx(1e-4 * std::exp(-2.0 * records[k].t)).epsilon(0.01));
    CHECK(records[k].mass == 1.0);
  }
}

TEST_CASE("mixed preset: entropy strictly increases, fisher strictly decreases") {
  const auto records = evolve_trajectory(config_for(preset_mixed(1, 1.5, 0.2, 0.1), 0.5, 16));
  for (std::size_t k = 1; k < records.size(); ++k) {
    CHECK(records[k].entropy > records[k - 1].entropy);
    CHECK(records[k].fisher < records[k - 1].fisher);
    CHECK(std::abs(records[k].mass - records[0].mass) <= 1e-12);
  }
}

TEST_CASE("positivity failures name the time and node") {
  // x^2 vanishes at the center node of an odd-order rule, so the run aborts
  // at t = 0.
  const ChaosExpansion x_sq = expansion(1, {{{2}, std::sqrt(2.0)}, {{0}, 1.0}});
  ExperimentConfig cfg = config_for(x_sq, 0.01, 5);
  cfg.quadrature_order = 9;
  try {
    evolve_trajectory(cfg);
    FAIL("expected PositivityError");
  } catch (const PositivityError& e) {
    CHECK(e.time == 0.0);
    CHECK(e.value <= 1e-20);
    CHECK(std::string(e.what()).find("node") != std::string::npos);
    CHECK(std::string(e.what()).find("t = 0") != std::string::npos);
  }
}

TEST_CASE("entropy production: FD of the entropy matches fisher") {
  // Uniform data: both sides vanish at every time.
  ExperimentConfig flat = config_for(preset_uniform(1), 0.5, 5);
  const auto flat_records = evolve_trajectory(flat);
  const IdentityReport flat_report = check_entropy_production(flat_records, flat.initial, flat);
  CHECK(flat_report.pass);
  CHECK(flat_report.max_abs_residual == 0.0);

  ExperimentConfig tilted = config_for(preset_first_chaos(1, 0.01), 0.5, 7);
  const auto tilted_records = evolve_trajectory(tilted);  // includes t = 0.5
  const IdentityReport tilted_report =
      check_entropy_production(tilted_records, tilted.initial, tilted);
  CHECK(tilted_report.pass);
  CHECK(tilted_report.max_rel_residual <= 1e-4);

  CHECK_THROWS_AS(
      check_entropy_production({flat_records[0], flat_records[1]}, flat.initial, flat),
      std::invalid_argument);
}

TEST_CASE("entropy production: the two expressions of the derivative agree to 1e-6") {
  // -integral (log u_t) L u_t versus integral |grad u_t|^2 / u_t at t = 0.25.
  const ChaosExpansion u0 = preset_mixed(1, 1.5, 0.2, 0.1);
  const QuadratureGrid grid = gauss_hermite_grid(1, default_functional_order(u0));
  const ChaosExpansion ut = apply_semigroup(u0, 0.25);
  const PositivityCertificate cert = check_positivity(ut, grid, 0.5);

  const GridFunction uv = expansion_to_grid(ut, grid);
  const GridFunction lv = expansion_to_grid(apply_generator(ut), grid);
  const double ibp = -integrate(grid, (uv.values.array().log() * lv.values.array()).matrix());
  const double info = fisher(ut, grid, cert);
  CHECK(std::abs(ibp - info) <= 1e-6 * info);
}

TEST_CASE("decay bound along trajectories") {
  // Constant data: 0 <= 0 everywhere.
  const auto flat = evolve_trajectory(config_for(preset_uniform(1), 0.5, 5));
  const IdentityReport flat_report = check_decay_bound(flat);
  CHECK(flat_report.pass);
  CHECK(flat_report.max_abs_residual == 0.0);

  // First chaos nearly saturates the bound: ratio within [e^{-2t}(1-1e-3), e^{-2t}].
  const auto first = evolve_trajectory(config_for(preset_first_chaos(1, 0.01), 0.5, 31));
  CHECK(check_decay_bound(first, 1e-6).pass);
  for (const TrajectoryRecord& rec : first) {
    const double envelope = std::exp(-2.0 * rec.t);
    CHECK(rec.ratio <= envelope * (1.0 + 1e-12));
    CHECK(rec.ratio >= envelope * (1.0 - 1e-3));
  }

  // Second chaos sits strictly below the envelope for t > 0.
  const auto second = evolve_trajectory(config_for(preset_second_chaos(1, 0.01), 0.5, 31));
  CHECK(check_decay_bound(second, 1e-6).pass);
  for (const TrajectoryRecord& rec : second) {
    const double envelope = std::exp(-2.0 * rec.t);
    CHECK(rec.ratio <= envelope * (1.0 + 1e-12));
    if (rec.t > 0.0) CHECK(rec.ratio < envelope);
  }
}

TEST_CASE("decay-rate fits") {
  const auto first = evolve_trajectory(config_for(preset_first_chaos(1, 0.01), 0.5, 31));
  const double first_rate = fit_decay_rate(first);
  CHECK(first_rate == doctest::Approx(2.0).epsilon(0.005));  // 2.00 +/- 0.01

  const auto second = evolve_trajectory(config_for(preset_second_chaos(1, 0.01), 0.5, 31));
  const double second_rate = fit_decay_rate(second);
  CHECK(second_rate == doctest::Approx(4.0).epsilon(0.0125));  // 4.00 +/- 0.05

  const auto flat = evolve_trajectory(config_for(preset_uniform(1), 0.5, 5));
  CHECK_THROWS_AS(fit_decay_rate(flat), std::domain_error);
}

TEST_CASE("differentiation under the integral sign") {
  ExperimentConfig flat = config_for(preset_uniform(1), 0.5, 5);
  const IdentityReport flat_report = check_interchange(flat.initial, 0.5, flat);
  CHECK(flat_report.pass);
  CHECK(flat_report.max_abs_residual <= 1e-15);

  ExperimentConfig tilted = config_for(preset_first_chaos(1, 0.01), 0.5, 7);
  CHECK(check_interchange(tilted.initial, 0.5, tilted).max_rel_residual <= 1e-4);

  ExperimentConfig mixed = config_for(preset_mixed(1, 1.5, 0.2, 0.1), 0.5, 7);
  CHECK(check_interchange(mixed.initial, 1.0, mixed).max_rel_residual <= 1e-4);
  CHECK_THROWS_AS(check_interchange(mixed.initial, 0.0, mixed), std::invalid_argument);
}

TEST_CASE("trajectory invariants are dimension-robust") {
  // The same 1-D presets embedded cylindrically in n = 1, 2, 3.
  std::vector<std::vector<TrajectoryRecord>> runs;
  for (int n = 1; n <= 3; ++n) {
    ExperimentConfig cfg = config_for(preset_mixed(n, 1.5, 0.2, 0.1), 0.5, 7);
    const auto records = evolve_trajectory(cfg);
    for (std::size_t k = 0; k < records.size(); ++k) {
      CHECK(std::abs(records[k].mass - records[0].mass) <= 1e-12);
      if (k > 0) {
        CHECK(records[k].entropy >= records[k - 1].entropy - 1e-12);
        CHECK(records[k].fisher <= records[k - 1].fisher + 1e-12);
      }
      CHECK(records[k].fisher <= std::exp(-2.0 * records[k].t) * records[0].fisher * (1.0 + 1e-6));
    }
    runs.push_back(records);
  }
  // Cylindrical invariance: the observables do not depend on the embedding.
  for (std::size_t k = 0; k < runs[0].size(); ++k) {
    for (int n = 1; n < 3; ++n) {
      CHECK(runs[static_cast<std::size_t>(n)][k].entropy ==
            doctest::Approx(runs[0][k].entropy).epsilon(1e-12));
      CHECK(runs[static_cast<std::size_t>(n)][k].fisher ==
            doctest::Approx(runs[0][k].fisher).epsilon(1e-12));
    }
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = config_for(preset_uniform(1), 0.5, 5);
  cfg.positivity_floor = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config_for(preset_uniform(2), 0.5, 5);
  cfg.dimension = 1;  // mismatch with the embedded density
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
