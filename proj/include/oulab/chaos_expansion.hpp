// Finite Hermite-chaos expansions: sparse coefficient maps over the
// orthonormal tensor basis of L^2(gamma_n).
#pragma once

#include <Eigen/Core>

#include <map>

#include "oulab/multi_index.hpp"
#include "oulab/quadrature.hpp"

namespace oulab {

/// Coefficients below this magnitude are dropped after arithmetic; the map
/// never stores explicit zeros.
inline constexpr double kCoefficientPruneTolerance = 1e-15;

/// F = sum_alpha c_alpha h_alpha with h_alpha orthonormal, so the L^2(gamma)
/// norm is the coefficient l^2 norm. Keys are kept in graded-lex order, which
/// makes iteration (and any serialization built on it) deterministic.
class ChaosExpansion {
 public:
  using CoefficientMap = std::map<MultiIndex, double, GradedLexLess>;

  explicit ChaosExpansion(int dimension);

  static ChaosExpansion constant(int dimension, double value);
  static ChaosExpansion coordinate(int dimension, int axis);  // x_axis = h_{e_axis}
  static ChaosExpansion basis_element(const MultiIndex& alpha, double coefficient = 1.0);

  int dimension() const { return dimension_; }
  /// Max order among stored coefficients; 0 for the zero expansion.
  int degree() const;
  bool is_zero() const { return coefficients_.empty(); }
  std::size_t term_count() const { return coefficients_.size(); }

  double coefficient(const MultiIndex& alpha) const;
  void set_coefficient(const MultiIndex& alpha, double value);
  void add_coefficient(const MultiIndex& alpha, double delta);
  const CoefficientMap& coefficients() const { return coefficients_; }

  double squared_norm() const;
  double norm() const;

  ChaosExpansion& operator+=(const ChaosExpansion& other);
  ChaosExpansion& operator-=(const ChaosExpansion& other);
  ChaosExpansion& operator*=(double scale);

  friend ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b) { return a += b; }
  friend ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b) { return a -= b; }
  friend ChaosExpansion operator*(ChaosExpansion a, double s) { return a *= s; }
  friend ChaosExpansion operator*(double s, ChaosExpansion a) { return a *= s; }
  friend ChaosExpansion operator-(ChaosExpansion a) { return a *= -1.0; }

  /// Exact polynomial product via the 1-D Hermite linearization, tensorized.
  friend ChaosExpansion operator*(const ChaosExpansion& a, const ChaosExpansion& b);

 private:
  void check_key(const MultiIndex& alpha) const;
  void check_same_dimension(const ChaosExpansion& other) const;
  void prune();

  int dimension_ = 1;
  CoefficientMap coefficients_;
};

double evaluate_expansion(const ChaosExpansion& f, const Eigen::VectorXd& point);

/// Pointwise evaluation at every grid node.
GridFunction expansion_to_grid(const ChaosExpansion& f, const QuadratureGrid& grid);

/// L^2(gamma) projection of nodewise data onto chaos of degree <= max_degree:
/// c_alpha = sum_r w_r g_r h_alpha(x_r). Exact round trip for polynomial data
/// when the grid is exact for max_degree + deg(g); otherwise an approximation.
ChaosExpansion project_to_expansion(const GridFunction& g, int max_degree);

/// max_alpha |a_alpha - b_alpha| over the union of supports.
double max_coefficient_difference(const ChaosExpansion& a, const ChaosExpansion& b);

/// <a, b>_{L^2(gamma)} = sum_alpha a_alpha b_alpha.
double inner_product(const ChaosExpansion& a, const ChaosExpansion& b);

}  // namespace oulab
