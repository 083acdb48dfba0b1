#include "oulab/ou_calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "oulab/hermite.hpp"

namespace oulab {

ChaosExpansion partial_derivative(const ChaosExpansion& f, int axis) {
  if (axis < 0 || axis >= f.dimension()) {
    throw std::invalid_argument("partial_derivative: axis out of range");
  }
  ChaosExpansion out(f.dimension());
  for (const auto& [alpha, c] : f.coefficients()) {
    const int k = alpha[axis];
    if (k == 0) continue;
    out.add_coefficient(alpha.lowered(axis), c * std::sqrt(static_cast<double>(k)));
  }
  return out;
}

ChaosExpansion multiply_by_coordinate(const ChaosExpansion& f, int axis) {
  if (axis < 0 || axis >= f.dimension()) {
    throw std::invalid_argument("multiply_by_coordinate: axis out of range");
  }
  ChaosExpansion out(f.dimension());
  for (const auto& [alpha, c] : f.coefficients()) {
    const int k = alpha[axis];
    out.add_coefficient(alpha.raised(axis), c * std::sqrt(static_cast<double>(k + 1)));
    if (k > 0) out.add_coefficient(alpha.lowered(axis), c * std::sqrt(static_cast<double>(k)));
  }
  return out;
}

VectorExpansion gradient(const ChaosExpansion& f) {
  VectorExpansion g(f.dimension());
  for (int i = 0; i < f.dimension(); ++i) g.components[static_cast<std::size_t>(i)] = partial_derivative(f, i);
  return g;
}

MatrixExpansion hessian(const ChaosExpansion& f) {
  const int n = f.dimension();
  MatrixExpansion h(n);
  for (int i = 0; i < n; ++i) {
    const ChaosExpansion di = partial_derivative(f, i);
    for (int j = i; j < n; ++j) {
      ChaosExpansion dij = partial_derivative(di, j);
      if (j != i) h.at(j, i) = dij;
      h.at(i, j) = std::move(dij);
    }
  }
  return h;
}

ChaosExpansion divergence(const VectorExpansion& z, DivergencePath path) {
  const int n = z.dimension();
  if (n == 0) throw std::invalid_argument("divergence: empty field");
  ChaosExpansion out(n);
  for (int i = 0; i < n; ++i) {
    const ChaosExpansion& zi = z.components[static_cast<std::size_t>(i)];
    if (zi.dimension() != n) throw std::invalid_argument("divergence: component dimension mismatch");
    if (path == DivergencePath::raising) {
      for (const auto& [beta, c] : zi.coefficients()) {
        out.add_coefficient(beta.raised(i), c * std::sqrt(static_cast<double>(beta[i] + 1)));
      }
    } else {
      out += multiply_by_coordinate(zi, i) - partial_derivative(zi, i);
    }
  }
  return out;
}

ChaosExpansion apply_generator(const ChaosExpansion& f, GeneratorPath path) {
  ChaosExpansion out(f.dimension());
  if (path == GeneratorPath::spectral) {
    for (const auto& [alpha, c] : f.coefficients()) {
      if (alpha.order() == 0) continue;
      out.set_coefficient(alpha, -static_cast<double>(alpha.order()) * c);
    }
    return out;
  }
  for (int i = 0; i < f.dimension(); ++i) {
    const ChaosExpansion di = partial_derivative(f, i);
    out += partial_derivative(di, i) - multiply_by_coordinate(di, i);
  }
  return out;
}

namespace {

ChaosExpansion mehler_apply(const ChaosExpansion& f, double t, int inner_order) {
  const int n = f.dimension();
  const int deg = f.degree();
  const double damp = std::exp(-t);
  // Cancellation-free also for small t: 1 - e^{-2t} = -expm1(-2t).
  const double spread = std::sqrt(-std::expm1(-2.0 * t));

  if (inner_order <= 0) inner_order = (deg + 1 + 1) / 2 + 2;
  // Outer projection integrand has degree <= 2 deg in x.
  const int outer_order = deg + 2;

  const QuadratureGrid outer = gauss_hermite_grid(n, outer_order);
  const QuadratureGrid inner = gauss_hermite_grid(n, inner_order);

  GridFunction smoothed{outer, Eigen::VectorXd(outer.node_count())};
  Eigen::VectorXd argument(n);
  for (Eigen::Index r = 0; r < outer.node_count(); ++r) {
    const Eigen::VectorXd x = outer.node(r);
    Eigen::VectorXd values(inner.node_count());
    for (Eigen::Index s = 0; s < inner.node_count(); ++s) {
      argument = damp * x + spread * inner.node(s);
      values(s) = evaluate_expansion(f, argument);
    }
    smoothed.values(r) = integrate(inner, values);
  }
  return project_to_expansion(smoothed, deg);
}

}  // namespace

ChaosExpansion apply_semigroup(const ChaosExpansion& f, double t, const SemigroupBackend& backend) {
  if (t < 0.0) throw std::invalid_argument("apply_semigroup: time must be non-negative");
  if (t == 0.0 || f.is_zero()) return f;
  if (backend.kind == SemigroupBackend::Kind::mehler_quadrature) {
    return mehler_apply(f, t, backend.inner_order);
  }
  ChaosExpansion out(f.dimension());
  for (const auto& [alpha, c] : f.coefficients()) {
    out.set_coefficient(alpha, c * std::exp(-static_cast<double>(alpha.order()) * t));
  }
  return out;
}

ChaosExpansion time_derivative(const ChaosExpansion& f, double t) {
  return apply_generator(apply_semigroup(f, t));
}

ChaosExpansion project_dimensions(const ChaosExpansion& f, int retained) {
  if (retained < 1 || retained > f.dimension()) {
    throw std::invalid_argument("project_dimensions: retained dimension out of range");
  }
  ChaosExpansion out(f.dimension());
  for (const auto& [alpha, c] : f.coefficients()) {
    if (alpha.max_support_axis() < retained) out.set_coefficient(alpha, c);
  }
  return out;
}

ChaosExpansion squared_gradient_norm(const ChaosExpansion& f) {
  ChaosExpansion out(f.dimension());
  for (int i = 0; i < f.dimension(); ++i) {
    const ChaosExpansion di = partial_derivative(f, i);
    out += di * di;
  }
  return out;
}

ChaosExpansion field_inner_product(const VectorExpansion& a, const VectorExpansion& b) {
  if (a.dimension() != b.dimension() || a.dimension() == 0) {
    throw std::invalid_argument("field_inner_product: dimension mismatch");
  }
  ChaosExpansion out(a.dimension());
  for (int i = 0; i < a.dimension(); ++i) {
    out += a.components[static_cast<std::size_t>(i)] * b.components[static_cast<std::size_t>(i)];
  }
  return out;
}

ChaosExpansion squared_frobenius_norm(const MatrixExpansion& m) {
  ChaosExpansion out(m.dimension());
  for (const ChaosExpansion& entry : m.entries) out += entry * entry;
  return out;
}

}  // namespace oulab
