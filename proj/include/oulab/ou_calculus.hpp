// Ornstein-Uhlenbeck calculus on chaos expansions: gradient, Hessian,
// divergence, generator, semigroup (two backends), coordinate projection.
#pragma once

#include <vector>

#include "oulab/chaos_expansion.hpp"

namespace oulab {

/// H_n-valued functional: component i multiplies basis direction i.
struct VectorExpansion {
  explicit VectorExpansion(int dimension)
      : components(static_cast<std::size_t>(dimension), ChaosExpansion(dimension)) {}
  int dimension() const { return static_cast<int>(components.size()); }
  std::vector<ChaosExpansion> components;
};

/// (H_n x H_n)-valued functional, row-major entries.
struct MatrixExpansion {
  explicit MatrixExpansion(int dimension)
      : n(dimension),
        entries(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension),
                ChaosExpansion(dimension)) {}
  int dimension() const { return n; }
  ChaosExpansion& at(int i, int j) { return entries[static_cast<std::size_t>(i * n + j)]; }
  const ChaosExpansion& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i * n + j)];
  }
  int n;
  std::vector<ChaosExpansion> entries;
};

/// d/dx_i in the orthonormal basis: h_alpha -> sqrt(alpha_i) h_{alpha - e_i}.
ChaosExpansion partial_derivative(const ChaosExpansion& f, int axis);

/// x_i * f via the ladder decomposition x_i h_k = sqrt(k+1) h_{k+1} + sqrt(k) h_{k-1}.
ChaosExpansion multiply_by_coordinate(const ChaosExpansion& f, int axis);

VectorExpansion gradient(const ChaosExpansion& f);

/// Symmetric matrix of second partials, exact.
MatrixExpansion hessian(const ChaosExpansion& f);

enum class DivergencePath {
  raising,  // adjoint of d/dx_i: h_beta -> sqrt(beta_i + 1) h_{beta + e_i}
  direct,   // sum_i (x_i Z_i - d/dx_i Z_i)
};

/// Gaussian divergence, the L^2(gamma) adjoint of the gradient.
ChaosExpansion divergence(const VectorExpansion& z,
                          DivergencePath path = DivergencePath::raising);

enum class GeneratorPath {
  spectral,  // c_alpha -> -|alpha| c_alpha
  direct,    // sum_i (d^2/dx_i^2 f - x_i d/dx_i f)
};

/// L f = Delta f - x . grad f; equals -divergence(gradient(f)).
ChaosExpansion apply_generator(const ChaosExpansion& f,
                               GeneratorPath path = GeneratorPath::spectral);

/// Semigroup backend selector. The spectral backend damps coefficients by
/// e^{-|alpha| t}; the Mehler backend integrates f(e^{-t} x + sqrt(1-e^{-2t}) y)
/// over y by Gauss-Hermite quadrature and projects back onto degree deg(f).
struct SemigroupBackend {
  enum class Kind { spectral, mehler_quadrature };
  Kind kind = Kind::spectral;
  int inner_order = 0;  // Mehler only; 0 derives ceil((deg+1)/2) + 2 from the input

  static SemigroupBackend spectral() { return {}; }
  static SemigroupBackend mehler(int inner_order = 0) {
    return {Kind::mehler_quadrature, inner_order};
  }
};

ChaosExpansion apply_semigroup(const ChaosExpansion& f, double t,
                               const SemigroupBackend& backend = SemigroupBackend::spectral());

/// d/dt P_t f = L P_t f, computed as that exact composition.
ChaosExpansion time_derivative(const ChaosExpansion& f, double t);

/// Conditional expectation onto the first `retained` coordinates: drop every
/// coefficient whose index has support beyond them. The ambient dimension is
/// kept; the result just no longer depends on the removed coordinates.
ChaosExpansion project_dimensions(const ChaosExpansion& f, int retained);

// Expansion-level composites used by the identity checks.

/// |grad f|^2 as an exact expansion.
ChaosExpansion squared_gradient_norm(const ChaosExpansion& f);

/// <a, b> pointwise (sum of componentwise products) as an exact expansion.
ChaosExpansion field_inner_product(const VectorExpansion& a, const VectorExpansion& b);

/// Squared Frobenius norm of a matrix field as an exact expansion.
ChaosExpansion squared_frobenius_norm(const MatrixExpansion& m);

}  // namespace oulab
