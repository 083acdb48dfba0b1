// Scalar functionals of densities against the Gaussian measure: mass, L^p
// norms, entropy, Fisher information, with nodewise positivity certificates.
#pragma once

#include <map>

#include "oulab/chaos_expansion.hpp"
#include "oulab/ou_calculus.hpp"

namespace oulab {

/// Record of a nodewise lower-bound check. Positivity is certified at the
/// quadrature nodes only (a polynomial like 1 + eps x is not globally
/// positive); the certificate states exactly what was checked.
struct PositivityCertificate {
  double floor = 0.0;
  double min_observed = 0.0;
  Eigen::Index argmin_node = -1;
  // Shape of the grid the check ran on.
  int grid_dimension = 0;
  int grid_order = 0;
  Eigen::Index node_count = 0;

  bool valid() const { return min_observed >= floor; }
  bool matches(const QuadratureGrid& grid) const {
    return grid.dimension() == grid_dimension && grid.order_per_dim() == grid_order &&
           grid.node_count() == node_count;
  }
};

/// Evaluate u at every node and record the minimum. An invalid certificate is
/// a value, not an error; the functionals below reject it.
PositivityCertificate check_positivity(const ChaosExpansion& u, const QuadratureGrid& grid,
                                       double floor);

/// Gaussian mean of u; exact, the coefficient of the constant basis element.
double mass(const ChaosExpansion& u);

/// -integral of u log u. Requires a valid certificate for u on this grid.
double entropy(const ChaosExpansion& u, const QuadratureGrid& grid,
               const PositivityCertificate& cert);

/// integral of |grad u|^2 / u. Requires a valid certificate.
double fisher(const ChaosExpansion& u, const QuadratureGrid& grid,
              const PositivityCertificate& cert);

/// (integral of |u|^p)^(1/p), p >= 1.
double lp_norm(const ChaosExpansion& u, double p, const QuadratureGrid& grid);

/// Grid order used for the non-polynomial functionals: deg(u) + 8 per
/// dimension.
int default_functional_order(const ChaosExpansion& u);

struct FunctionalReport {
  double mass = 0.0;
  double entropy = 0.0;
  double fisher = 0.0;
  std::map<double, double> lp_norms;
};

FunctionalReport functional_report(const ChaosExpansion& u, const QuadratureGrid& grid,
                                   const PositivityCertificate& cert,
                                   const std::vector<double>& ps = {2.0});

}  // namespace oulab
