#include "oulab/experiments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace oulab {

std::vector<double> TimeGrid::points() const {
  validate();
  std::vector<double> ts(static_cast<std::size_t>(count));
  if (spacing == Spacing::linear) {
    const double step = (stop - start) / (count - 1);
    for (int k = 0; k < count; ++k) ts[static_cast<std::size_t>(k)] = start + step * k;
  } else {
    const double l0 = std::log(start);
    const double step = (std::log(stop) - l0) / (count - 1);
    for (int k = 0; k < count; ++k) ts[static_cast<std::size_t>(k)] = std::exp(l0 + step * k);
  }
  ts.back() = stop;
  return ts;
}

void TimeGrid::validate() const {
  if (!(start >= 0.0)) throw std::invalid_argument("TimeGrid: start must be >= 0");
  if (!(stop > start)) throw std::invalid_argument("TimeGrid: stop must be > start");
  if (count < 2) throw std::invalid_argument("TimeGrid: count must be >= 2");
  if (spacing == Spacing::log && start <= 0.0) {
    throw std::invalid_argument("TimeGrid: log spacing requires start > 0");
  }
}

void ExperimentConfig::validate() const {
  if (dimension < 1) throw std::invalid_argument("ExperimentConfig: dimension must be >= 1");
  if (initial.dimension() != dimension) {
    throw std::invalid_argument("ExperimentConfig: initial density dimension mismatch");
  }
  if (!(positivity_floor > 0.0)) {
    throw std::invalid_argument("ExperimentConfig: positivity floor must be positive");
  }
  if (quadrature_order < 0) {
    throw std::invalid_argument("ExperimentConfig: quadrature order must be >= 0");
  }
  time_grid.validate();
}

int ExperimentConfig::effective_order() const {
  return quadrature_order > 0 ? quadrature_order : default_functional_order(initial);
}

double ExperimentConfig::effective_fd_step() const {
  const double spacing = (time_grid.stop - time_grid.start) / (time_grid.count - 1);
  return std::min(tolerances.fd_step, spacing / 10.0);
}

PositivityError::PositivityError(double time_, Eigen::Index node_index_,
                                 const Eigen::VectorXd& node, double value_, double floor)
    : std::runtime_error([&] {
        std::ostringstream oss;
        oss << "positivity failure at t = " << time_ << ": u = " << value_ << " < floor "
            << floor << " at node " << node_index_ << " = (";
        for (Eigen::Index i = 0; i < node.size(); ++i) {
          if (i) oss << ",";
          oss << node(i);
        }
        oss << ")";
        return oss.str();
      }()),
      time(time_),
      node_index(node_index_),
      value(value_) {}

ChaosExpansion preset_uniform(int dimension) { return ChaosExpansion::constant(dimension, 1.0); }

ChaosExpansion preset_first_chaos(int dimension, double eps) {
  ChaosExpansion u = ChaosExpansion::constant(dimension, 1.0);
  u.set_coefficient(MultiIndex::unit(dimension, 0), eps);
  return u;
}

ChaosExpansion preset_second_chaos(int dimension, double eps) {
  ChaosExpansion u = ChaosExpansion::constant(dimension, 1.0);
  // x^2 - 1 = sqrt(2) h_2 in the first coordinate.
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  e[0] = 2;
  u.set_coefficient(MultiIndex(e), eps * std::sqrt(2.0));
  return u;
}

ChaosExpansion preset_mixed(int dimension, double c0, double c1, double c2) {
  ChaosExpansion u = ChaosExpansion::constant(dimension, c0);
  u.set_coefficient(MultiIndex::unit(dimension, 0), c1);
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  e[0] = 2;
  u.set_coefficient(MultiIndex(e), c2 * std::sqrt(2.0));
  return u;
}

namespace {

PositivityCertificate certify_or_throw(const ChaosExpansion& u, const QuadratureGrid& grid,
                                       double floor, double t) {
  const PositivityCertificate cert = check_positivity(u, grid, floor);
  if (!cert.valid()) {
    throw PositivityError(t, cert.argmin_node, grid.node(cert.argmin_node), cert.min_observed,
                          floor);
  }
  return cert;
}

}  // namespace

std::vector<TrajectoryRecord> evolve_trajectory(const ExperimentConfig& cfg) {
  cfg.validate();
  const QuadratureGrid grid =
      gauss_hermite_grid(cfg.dimension, cfg.effective_order(), cfg.node_budget);

  const PositivityCertificate cert0 =
      certify_or_throw(cfg.initial, grid, cfg.positivity_floor, 0.0);
  const double fisher0 = fisher(cfg.initial, grid, cert0);

  std::vector<TrajectoryRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.time_grid.count));
  for (double t : cfg.time_grid.points()) {
    const ChaosExpansion ut = apply_semigroup(cfg.initial, t);
    const PositivityCertificate cert = certify_or_throw(ut, grid, cfg.positivity_floor, t);
    TrajectoryRecord rec;
    rec.t = t;
    rec.mass = mass(ut);
    rec.entropy = entropy(ut, grid, cert);
    rec.fisher = fisher(ut, grid, cert);
    rec.bound = std::exp(-2.0 * t) * fisher0;
    rec.ratio = fisher0 > 0.0 ? rec.fisher / fisher0 : std::numeric_limits<double>::quiet_NaN();
    records.push_back(rec);
  }
  return records;
}

IdentityReport check_entropy_production(const std::vector<TrajectoryRecord>& trajectory,
                                        const ChaosExpansion& u0, const ExperimentConfig& cfg) {
  if (trajectory.size() < 3) {
    throw std::invalid_argument("check_entropy_production: need at least 3 time points");
  }
  const QuadratureGrid grid =
      gauss_hermite_grid(cfg.dimension, cfg.effective_order(), cfg.node_budget);
  const double h = cfg.effective_fd_step();

  const auto entropy_at = [&](double t) {
    const ChaosExpansion ut = apply_semigroup(u0, t);
    return entropy(ut, grid, certify_or_throw(ut, grid, cfg.positivity_floor, t));
  };

  double max_abs = 0.0;
  double max_rel = 0.0;
  std::int64_t checked = 0;
  for (const TrajectoryRecord& rec : trajectory) {
    if (rec.t < h) continue;
    const double fd = (entropy_at(rec.t + h) - entropy_at(rec.t - h)) / (2.0 * h);

    // The middle expression of the same derivative: -integral (log u_t) L u_t.
    const ChaosExpansion ut = apply_semigroup(u0, rec.t);
    const GridFunction uv = expansion_to_grid(ut, grid);
    const GridFunction lv = expansion_to_grid(apply_generator(ut), grid);
    const double ibp =
        -integrate(grid, (uv.values.array().log() * lv.values.array()).matrix());

    for (const double other : {fd, ibp}) {
      const double abs_resid = std::abs(other - rec.fisher);
      const double denom = std::max(std::abs(rec.fisher), std::abs(other));
      max_abs = std::max(max_abs, abs_resid);
      max_rel = std::max(max_rel, denom > 0.0 ? abs_resid / denom : abs_resid);
      ++checked;
    }
  }

  IdentityReport report;
  report.identity_name = "entropy-production";
  report.max_abs_residual = max_abs;
  report.max_rel_residual = max_rel;
  report.nodes_checked = checked;
  report.tolerance = cfg.tolerances.entropy_production_rel;
  report.pass = max_rel <= report.tolerance;
  return report;
}

IdentityReport check_decay_bound(const std::vector<TrajectoryRecord>& trajectory,
                                 double rel_tol) {
  IdentityReport report;
  report.identity_name = "decay-bound";
  report.tolerance = rel_tol;
  for (const TrajectoryRecord& rec : trajectory) {
    const double violation = std::max(0.0, rec.fisher - rec.bound);
    report.max_abs_residual = std::max(report.max_abs_residual, violation);
    const double rel = rec.bound > 0.0 ? violation / rec.bound : violation;
    report.max_rel_residual = std::max(report.max_rel_residual, rel);
    ++report.nodes_checked;
  }
  report.pass = report.max_rel_residual <= rel_tol;
  return report;
}

double fit_decay_rate(const std::vector<TrajectoryRecord>& trajectory) {
  if (trajectory.size() < 2) {
    throw std::invalid_argument("fit_decay_rate: need at least 2 time points");
  }
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (const TrajectoryRecord& rec : trajectory) {
    if (!(rec.fisher > 0.0)) {
      throw std::domain_error("fit_decay_rate: fisher must be positive at every time point");
    }
    t_mean += rec.t;
    y_mean += std::log(rec.fisher);
  }
  const double n = static_cast<double>(trajectory.size());
  t_mean /= n;
  y_mean /= n;
  double cov = 0.0;
  double var = 0.0;
  for (const TrajectoryRecord& rec : trajectory) {
    const double dt = rec.t - t_mean;
    cov += dt * (std::log(rec.fisher) - y_mean);
    var += dt * dt;
  }
  return -cov / var;
}

IdentityReport check_interchange(const ChaosExpansion& u0, double t,
                                 const ExperimentConfig& cfg) {
  const QuadratureGrid grid =
      gauss_hermite_grid(cfg.dimension, cfg.effective_order(), cfg.node_budget);
  const double h = cfg.effective_fd_step();
  if (t < h) throw std::invalid_argument("check_interchange: need t >= FD step");

  // d/dt integral u_t log u_t by central differences.
  const auto u_log_u = [&](double s) {
    const ChaosExpansion us = apply_semigroup(u0, s);
    certify_or_throw(us, grid, cfg.positivity_floor, s);
    const GridFunction uv = expansion_to_grid(us, grid);
    return integrate(grid, (uv.values.array() * uv.values.array().log()).matrix());
  };
  const double lhs = (u_log_u(t + h) - u_log_u(t - h)) / (2.0 * h);

  // integral of the pointwise derivative (log u_t) L u_t + L u_t.
  const ChaosExpansion ut = apply_semigroup(u0, t);
  certify_or_throw(ut, grid, cfg.positivity_floor, t);
  const GridFunction uv = expansion_to_grid(ut, grid);
  const GridFunction lv = expansion_to_grid(apply_generator(ut), grid);
  const double rhs = integrate(
      grid, (uv.values.array().log() * lv.values.array() + lv.values.array()).matrix());

  IdentityReport report;
  report.identity_name = "interchange";
  report.max_abs_residual = std::abs(lhs - rhs);
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  report.max_rel_residual = denom > 0.0 ? report.max_abs_residual / denom : report.max_abs_residual;
  report.nodes_checked = 1;
  report.tolerance = cfg.tolerances.interchange_rel;
  report.pass = report.max_rel_residual <= report.tolerance;
  return report;
}

}  // namespace oulab
