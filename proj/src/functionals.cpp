#include "oulab/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace oulab {

namespace {

void require_usable(const PositivityCertificate& cert, const QuadratureGrid& grid,
                    const char* where) {
  if (!cert.matches(grid)) {
    throw std::invalid_argument(std::string(where) +
                                ": certificate was issued for a different grid");
  }
  if (!cert.valid()) {
    throw std::domain_error(std::string(where) + ": positivity certificate invalid (min " +
                            std::to_string(cert.min_observed) + " below floor " +
                            std::to_string(cert.floor) + ")");
  }
}

}  // namespace

PositivityCertificate check_positivity(const ChaosExpansion& u, const QuadratureGrid& grid,
                                       double floor) {
  if (floor <= 0.0) throw std::invalid_argument("check_positivity: floor must be positive");
  const GridFunction values = expansion_to_grid(u, grid);
  PositivityCertificate cert;
  cert.floor = floor;
  cert.min_observed = values.values.minCoeff(&cert.argmin_node);
  cert.grid_dimension = grid.dimension();
  cert.grid_order = grid.order_per_dim();
  cert.node_count = grid.node_count();
  return cert;
}

double mass(const ChaosExpansion& u) {
  return u.coefficient(MultiIndex::zero(u.dimension()));
}

double entropy(const ChaosExpansion& u, const QuadratureGrid& grid,
               const PositivityCertificate& cert) {
  require_usable(cert, grid, "entropy");
  GridFunction g = expansion_to_grid(u, grid);
  g.values = -g.values.array() * g.values.array().log();
  return integrate(g);
}

double fisher(const ChaosExpansion& u, const QuadratureGrid& grid,
              const PositivityCertificate& cert) {
  require_usable(cert, grid, "fisher");
  const GridFunction uvals = expansion_to_grid(u, grid);
  Eigen::VectorXd grad_sq = Eigen::VectorXd::Zero(grid.node_count());
  for (int i = 0; i < u.dimension(); ++i) {
    const GridFunction di = expansion_to_grid(partial_derivative(u, i), grid);
    grad_sq.array() += di.values.array().square();
  }
  return integrate(grid, (grad_sq.array() / uvals.values.array()).matrix());
}

double lp_norm(const ChaosExpansion& u, double p, const QuadratureGrid& grid) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  GridFunction g = expansion_to_grid(u, grid);
  g.values = g.values.array().abs().pow(p);
  return std::pow(integrate(g), 1.0 / p);
}

int default_functional_order(const ChaosExpansion& u) { return u.degree() + 8; }

FunctionalReport functional_report(const ChaosExpansion& u, const QuadratureGrid& grid,
                                   const PositivityCertificate& cert,
                                   const std::vector<double>& ps) {
  FunctionalReport report;
  report.mass = mass(u);
  report.entropy = entropy(u, grid, cert);
  report.fisher = fisher(u, grid, cert);
  for (double p : ps) report.lp_norms[p] = lp_norm(u, p, grid);
  return report;
}

}  // namespace oulab
