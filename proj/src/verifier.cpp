#include "oulab/verifier.hpp"

#include <cmath>
#include <stdexcept>

namespace oulab {

void ResidualStats::add(double lhs, double rhs) {
  max_abs_ = std::max(max_abs_, std::abs(lhs - rhs));
  max_lhs_ = std::max(max_lhs_, std::abs(lhs));
  max_rhs_ = std::max(max_rhs_, std::abs(rhs));
  ++count_;
}

void ResidualStats::add_one_sided(double lhs, double rhs) {
  max_abs_ = std::max(max_abs_, std::max(0.0, lhs - rhs));
  max_lhs_ = std::max(max_lhs_, std::abs(lhs));
  max_rhs_ = std::max(max_rhs_, std::abs(rhs));
  ++count_;
}

void ResidualStats::merge(const ResidualStats& other) {
  max_abs_ = std::max(max_abs_, other.max_abs_);
  max_lhs_ = std::max(max_lhs_, other.max_lhs_);
  max_rhs_ = std::max(max_rhs_, other.max_rhs_);
  count_ += other.count_;
}

IdentityReport ResidualStats::finalize(std::string identity_name, double tolerance) const {
  IdentityReport report;
  report.identity_name = std::move(identity_name);
  report.max_abs_residual = max_abs_;
  report.max_rel_residual = max_abs_ / std::max({1.0, max_lhs_, max_rhs_});
  report.nodes_checked = count_;
  report.tolerance = tolerance;
  report.pass = report.max_rel_residual <= tolerance;
  return report;
}

namespace {

void compare_coefficients(ResidualStats& stats, const ChaosExpansion& lhs,
                          const ChaosExpansion& rhs) {
  for (const auto& [alpha, c] : lhs.coefficients()) stats.add(c, rhs.coefficient(alpha));
  for (const auto& [alpha, c] : rhs.coefficients()) {
    if (lhs.coefficients().find(alpha) == lhs.coefficients().end()) stats.add(0.0, c);
  }
}

// Everything the Bochner identity needs about u_t, as exact expansions.
struct BochnerIngredients {
  ChaosExpansion u;
  VectorExpansion grad_u;
  MatrixExpansion hess_u;
  ChaosExpansion lu;
  VectorExpansion grad_lu;
  ChaosExpansion grad_sq;          // |grad u|^2
  ChaosExpansion l_grad_sq;        // L |grad u|^2
  VectorExpansion grad_grad_sq;    // grad |grad u|^2

  explicit BochnerIngredients(const ChaosExpansion& u0, double t)
      : u(apply_semigroup(u0, t)),
        grad_u(gradient(u)),
        hess_u(hessian(u)),
        lu(apply_generator(u)),
        grad_lu(gradient(lu)),
        grad_sq(field_inner_product(grad_u, grad_u)),
        l_grad_sq(apply_generator(grad_sq)),
        grad_grad_sq(gradient(grad_sq)) {}
};

std::pair<double, double> bochner_sides(const BochnerIngredients& ing,
                                        const Eigen::VectorXd& point) {
  const int n = ing.u.dimension();
  const double uv = evaluate_expansion(ing.u, point);
  const double luv = evaluate_expansion(ing.lu, point);
  const double gv = evaluate_expansion(ing.grad_sq, point);
  const double lgv = evaluate_expansion(ing.l_grad_sq, point);

  Eigen::VectorXd grad(n), grad_l(n), grad_g(n);
  for (int i = 0; i < n; ++i) {
    grad(i) = evaluate_expansion(ing.grad_u.components[static_cast<std::size_t>(i)], point);
    grad_l(i) = evaluate_expansion(ing.grad_lu.components[static_cast<std::size_t>(i)], point);
    grad_g(i) = evaluate_expansion(ing.grad_grad_sq.components[static_cast<std::size_t>(i)], point);
  }

  // L(g/u) by the product rule with u^{-1}, using
  // L(u^{-1}) = -u^{-2} L u + 2 u^{-3} |grad u|^2 and grad(u^{-1}) = -u^{-2} grad u.
  const double l_ratio = lgv / uv + gv * (-luv / (uv * uv) + 2.0 * gv / (uv * uv * uv)) -
                         2.0 / (uv * uv) * grad.dot(grad_g);
  // d/dt (g/u) with du/dt = L u exactly.
  const double dt_ratio = 2.0 / uv * grad.dot(grad_l) - gv / (uv * uv) * luv;
  const double lhs = l_ratio - dt_ratio;

  double deviation_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double hij = evaluate_expansion(ing.hess_u.at(i, j), point);
      const double m = hij - grad(i) * grad(j) / uv;
      deviation_sq += m * m;
    }
  }
  const double rhs = 2.0 / uv * gv + 2.0 / uv * deviation_sq;
  return {lhs, rhs};
}

void require_certificate(const PositivityCertificate& cert, const QuadratureGrid& grid,
                         const char* where) {
  if (!cert.matches(grid)) {
    throw std::invalid_argument(std::string(where) +
                                ": certificate was issued for a different grid");
  }
  if (!cert.valid()) {
    throw std::domain_error(std::string(where) + ": positivity certificate invalid");
  }
}

}  // namespace

IdentityReport check_weitzenbock(const ChaosExpansion& f, const QuadratureGrid& grid,
                                 double tolerance) {
  const VectorExpansion grad_f = gradient(f);
  const ChaosExpansion grad_sq = field_inner_product(grad_f, grad_f);
  const ChaosExpansion lhs = apply_generator(grad_sq);

  const ChaosExpansion lf = apply_generator(f);
  ChaosExpansion rhs = 2.0 * field_inner_product(grad_f, gradient(lf));
  rhs += 2.0 * grad_sq;
  rhs += 2.0 * squared_frobenius_norm(hessian(f));

  const GridFunction lhs_values = expansion_to_grid(lhs, grid);
  const GridFunction rhs_values = expansion_to_grid(rhs, grid);
  ResidualStats stats;
  for (Eigen::Index r = 0; r < grid.node_count(); ++r) {
    stats.add(lhs_values.values(r), rhs_values.values(r));
  }
  return stats.finalize("weitzenbock", tolerance);
}

IdentityReport check_bochner_entropy(const ChaosExpansion& u0, double t,
                                     const QuadratureGrid& grid,
                                     const PositivityCertificate& cert, double tolerance) {
  if (t < 0.0) throw std::invalid_argument("check_bochner_entropy: time must be non-negative");
  require_certificate(cert, grid, "check_bochner_entropy");
  const BochnerIngredients ing(u0, t);
  ResidualStats stats;
  for (Eigen::Index r = 0; r < grid.node_count(); ++r) {
    const auto [lhs, rhs] = bochner_sides(ing, grid.node(r));
    stats.add(lhs, rhs);
  }
  return stats.finalize("bochner-entropy", tolerance);
}

std::pair<double, double> bochner_sides_at(const ChaosExpansion& u0, double t,
                                           const Eigen::VectorXd& point) {
  return bochner_sides(BochnerIngredients(u0, t), point);
}

IdentityReport check_bochner_time_derivative_fd(const ChaosExpansion& u0, double t,
                                                const QuadratureGrid& grid,
                                                const PositivityCertificate& cert,
                                                double fd_step, double tolerance) {
  if (t < fd_step) {
    throw std::invalid_argument("check_bochner_time_derivative_fd: need t >= fd_step");
  }
  require_certificate(cert, grid, "check_bochner_time_derivative_fd");
  const BochnerIngredients center(u0, t);

  const auto ratio_values = [&](double s) {
    const ChaosExpansion us = apply_semigroup(u0, s);
    const GridFunction uv = expansion_to_grid(us, grid);
    if (uv.values.minCoeff() <= 0.0) {
      throw std::domain_error("check_bochner_time_derivative_fd: u_t not positive at nodes");
    }
    const GridFunction gs = expansion_to_grid(squared_gradient_norm(us), grid);
    return Eigen::VectorXd((gs.values.array() / uv.values.array()).matrix());
  };
  const Eigen::VectorXd forward = ratio_values(t + fd_step);
  const Eigen::VectorXd backward = ratio_values(t - fd_step);

  ResidualStats stats;
  for (Eigen::Index r = 0; r < grid.node_count(); ++r) {
    const Eigen::VectorXd point = grid.node(r);
    const double uv = evaluate_expansion(center.u, point);
    const double luv = evaluate_expansion(center.lu, point);
    const double gv = evaluate_expansion(center.grad_sq, point);
    double gdotgl = 0.0;
    for (int i = 0; i < center.u.dimension(); ++i) {
      gdotgl += evaluate_expansion(center.grad_u.components[static_cast<std::size_t>(i)], point) *
                evaluate_expansion(center.grad_lu.components[static_cast<std::size_t>(i)], point);
    }
    const double analytic = 2.0 / uv * gdotgl - gv / (uv * uv) * luv;
    const double fd = (forward(r) - backward(r)) / (2.0 * fd_step);
    stats.add(analytic, fd);
  }
  return stats.finalize("bochner-dt-fd", tolerance);
}

IdentityReport check_integration_by_parts(const ChaosExpansion& f, const ChaosExpansion& g,
                                          const QuadratureGrid& grid, double tolerance) {
  const GridFunction lf = expansion_to_grid(apply_generator(f), grid);
  const GridFunction gv = expansion_to_grid(g, grid);
  const double lhs = integrate(grid, (lf.values.array() * gv.values.array()).matrix());

  const GridFunction grad_dot =
      expansion_to_grid(field_inner_product(gradient(f), gradient(g)), grid);
  const double rhs = -integrate(grad_dot);

  ResidualStats stats;
  stats.add(lhs, rhs);
  return stats.finalize("integration-by-parts", tolerance);
}

IdentityReport check_semigroup_symmetry(const ChaosExpansion& u, const ChaosExpansion& v,
                                        double t, const QuadratureGrid& grid, double tolerance) {
  const GridFunction uv = expansion_to_grid(u, grid);
  const GridFunction vv = expansion_to_grid(v, grid);
  const GridFunction ptv = expansion_to_grid(apply_semigroup(v, t), grid);
  const GridFunction ptu = expansion_to_grid(apply_semigroup(u, t), grid);
  const double lhs = integrate(grid, (uv.values.array() * ptv.values.array()).matrix());
  const double rhs = integrate(grid, (vv.values.array() * ptu.values.array()).matrix());
  ResidualStats stats;
  stats.add(lhs, rhs);
  return stats.finalize("semigroup-symmetry", tolerance);
}

IdentityReport check_contraction(const ChaosExpansion& u, double p, double t,
                                 const QuadratureGrid& grid, double tolerance) {
  if (p <= 1.0) throw std::invalid_argument("check_contraction: p must be > 1");
  if (t < 0.0) throw std::invalid_argument("check_contraction: time must be non-negative");
  const double lhs = lp_norm(apply_semigroup(u, t), p, grid);
  const double rhs = lp_norm(u, p, grid);
  ResidualStats stats;
  stats.add_one_sided(lhs, rhs);
  return stats.finalize("contraction", tolerance);
}

IdentityReport check_projection_commutes(const ChaosExpansion& u, int retained, double t,
                                         double tolerance) {
  const ChaosExpansion project_then_evolve = apply_semigroup(project_dimensions(u, retained), t);
  const ChaosExpansion evolve_then_project = project_dimensions(apply_semigroup(u, t), retained);
  ResidualStats stats;
  compare_coefficients(stats, evolve_then_project, project_then_evolve);
  return stats.finalize("projection-commutation", tolerance);
}

IdentityReport check_semigroup_law(const ChaosExpansion& f, double s, double t,
                                   double tolerance) {
  const ChaosExpansion two_step = apply_semigroup(apply_semigroup(f, t), s);
  const ChaosExpansion one_step = apply_semigroup(f, s + t);
  ResidualStats stats;
  compare_coefficients(stats, two_step, one_step);
  return stats.finalize("semigroup-law", tolerance);
}

IdentityReport check_generator_composition(const ChaosExpansion& f, double tolerance) {
  const ChaosExpansion spectral = apply_generator(f, GeneratorPath::spectral);
  const ChaosExpansion direct = apply_generator(f, GeneratorPath::direct);
  const ChaosExpansion composed = -divergence(gradient(f));
  ResidualStats stats;
  compare_coefficients(stats, spectral, composed);
  compare_coefficients(stats, spectral, direct);
  return stats.finalize("generator-composition", tolerance);
}

IdentityReport check_gradient_commutation(const ChaosExpansion& f, double t, double tolerance) {
  const VectorExpansion lhs = gradient(apply_semigroup(f, t));
  const VectorExpansion grad_f = gradient(f);
  const double damp = std::exp(-t);
  ResidualStats stats;
  for (int i = 0; i < f.dimension(); ++i) {
    const ChaosExpansion rhs =
        damp * apply_semigroup(grad_f.components[static_cast<std::size_t>(i)], t);
    compare_coefficients(stats, lhs.components[static_cast<std::size_t>(i)], rhs);
  }
  return stats.finalize("gradient-commutation", tolerance);
}

IdentityReport check_mass_invariance(const ChaosExpansion& f, double t, double tolerance) {
  ResidualStats stats;
  stats.add(mass(apply_semigroup(f, t)), mass(f));
  return stats.finalize("mass-invariance", tolerance);
}

IdentityReport check_backend_agreement(const ChaosExpansion& f, double t, double tolerance) {
  const ChaosExpansion spectral = apply_semigroup(f, t, SemigroupBackend::spectral());
  const ChaosExpansion mehler = apply_semigroup(f, t, SemigroupBackend::mehler());
  ResidualStats stats;
  compare_coefficients(stats, spectral, mehler);
  return stats.finalize("backend-agreement", tolerance);
}

IdentityReport check_entropy_bound(const ChaosExpansion& u, const QuadratureGrid& grid,
                                   const PositivityCertificate& cert, double tolerance) {
  ResidualStats stats;
  stats.add_one_sided(entropy(u, grid, cert), 1.0 - mass(u));
  return stats.finalize("entropy-bound", tolerance);
}

IdentityReport check_fisher_right_continuity(const ChaosExpansion& u,
                                             const QuadratureGrid& grid, double floor,
                                             double sample_time, double tolerance) {
  if (sample_time <= 0.0) {
    throw std::invalid_argument("check_fisher_right_continuity: sample_time must be positive");
  }
  const PositivityCertificate cert0 = check_positivity(u, grid, floor);
  const double base = fisher(u, grid, cert0);
  const ChaosExpansion ut = apply_semigroup(u, sample_time);
  const PositivityCertificate cert_t = check_positivity(ut, grid, floor);
  const double sampled = fisher(ut, grid, cert_t);

  IdentityReport report;
  report.identity_name = "fisher-right-continuity";
  report.max_abs_residual = std::abs(sampled - base);
  report.max_rel_residual = base > 0.0 ? report.max_abs_residual / base : std::abs(sampled);
  report.nodes_checked = 1;
  report.tolerance = tolerance;
  report.pass = report.max_rel_residual <= tolerance;
  return report;
}

}  // namespace oulab
