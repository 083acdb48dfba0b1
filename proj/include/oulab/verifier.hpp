// Residual checks of the exact identities of the OU calculus, reported as
// maximum pointwise (or coefficient-wise) residuals.
#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "oulab/functionals.hpp"

namespace oulab {

/// Outcome of one identity check. The relative residual divides the largest
/// absolute residual by max(1, max|LHS|, max|RHS|), so identities whose both
/// sides vanish report 0 instead of 0/0.
struct IdentityReport {
  std::string identity_name;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  std::int64_t nodes_checked = 0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Residual accumulator shared by the checks. One-sided comparisons record
/// only the violation max(0, lhs - rhs).
class ResidualStats {
 public:
  void add(double lhs, double rhs);
  void add_one_sided(double lhs, double rhs);
  void merge(const ResidualStats& other);
  IdentityReport finalize(std::string identity_name, double tolerance) const;

 private:
  double max_abs_ = 0.0;
  double max_lhs_ = 0.0;
  double max_rhs_ = 0.0;
  std::int64_t count_ = 0;
};

/// L(|grad F|^2) = 2 <grad F, grad LF> + 2 |grad F|^2 + 2 ||Hess F||^2,
/// both sides assembled as exact expansions and compared at every node.
IdentityReport check_weitzenbock(const ChaosExpansion& f, const QuadratureGrid& grid,
                                 double tolerance = 1e-10);

/// (L - d/dt)(|grad u_t|^2 / u_t) = (2/u_t) |grad u_t|^2
///   + (2/u_t) ||Hess u_t - grad u_t (x) grad u_t / u_t||^2
/// with u_t = P_t u0; polynomial ingredients combined with pointwise division.
IdentityReport check_bochner_entropy(const ChaosExpansion& u0, double t,
                                     const QuadratureGrid& grid,
                                     const PositivityCertificate& cert,
                                     double tolerance = 1e-8);

/// Both sides of the Bochner identity at one point; test hook.
std::pair<double, double> bochner_sides_at(const ChaosExpansion& u0, double t,
                                           const Eigen::VectorXd& point);

/// Secondary diagnostic: the analytic d/dt(|grad u_t|^2/u_t) against a central
/// finite difference in t of the same ratio at every node.
IdentityReport check_bochner_time_derivative_fd(const ChaosExpansion& u0, double t,
                                                const QuadratureGrid& grid,
                                                const PositivityCertificate& cert,
                                                double fd_step = 1e-4,
                                                double tolerance = 1e-6);

/// integral (LF) G = -integral <grad F, grad G>, both by quadrature.
IdentityReport check_integration_by_parts(const ChaosExpansion& f, const ChaosExpansion& g,
                                          const QuadratureGrid& grid, double tolerance = 1e-10);

/// integral u P_t v = integral v P_t u.
IdentityReport check_semigroup_symmetry(const ChaosExpansion& u, const ChaosExpansion& v,
                                        double t, const QuadratureGrid& grid,
                                        double tolerance = 1e-10);

/// ||P_t u||_p <= ||u||_p, one-sided.
IdentityReport check_contraction(const ChaosExpansion& u, double p, double t,
                                 const QuadratureGrid& grid, double tolerance = 1e-12);

/// Conditional expectation onto the first k coordinates commutes with P_t,
/// coefficient-wise.
IdentityReport check_projection_commutes(const ChaosExpansion& u, int retained, double t,
                                         double tolerance = 1e-14);

/// P_s P_t = P_{s+t}, coefficient-wise.
IdentityReport check_semigroup_law(const ChaosExpansion& f, double s, double t,
                                   double tolerance = 1e-12);

/// Spectral L, direct-formula L, and -divergence(gradient(.)) agree
/// coefficient-wise.
IdentityReport check_generator_composition(const ChaosExpansion& f, double tolerance = 1e-10);

/// grad P_t F = e^{-t} P_t grad F, componentwise coefficient comparison.
IdentityReport check_gradient_commutation(const ChaosExpansion& f, double t,
                                          double tolerance = 1e-12);

/// The constant coefficient (the Gaussian mean) is unchanged by P_t.
IdentityReport check_mass_invariance(const ChaosExpansion& f, double t,
                                     double tolerance = 1e-12);

/// Spectral vs Mehler-quadrature semigroup, coefficient-wise.
IdentityReport check_backend_agreement(const ChaosExpansion& f, double t,
                                       double tolerance = 1e-10);

/// Ent(u) <= 1 - mass(u), one-sided.
IdentityReport check_entropy_bound(const ChaosExpansion& u, const QuadratureGrid& grid,
                                   const PositivityCertificate& cert, double tolerance = 1e-10);

/// Small-t sampling of the right-continuity of t -> fisher(P_t u): compares
/// fisher at t = sample_time against t = 0, relative to the latter.
IdentityReport check_fisher_right_continuity(const ChaosExpansion& u,
                                             const QuadratureGrid& grid, double floor,
                                             double sample_time = 1e-4,
                                             double tolerance = 1e-2);

}  // namespace oulab
