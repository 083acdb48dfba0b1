#include "oulab/chaos_expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "oulab/hermite.hpp"

namespace oulab {

ChaosExpansion::ChaosExpansion(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("ChaosExpansion: dimension must be >= 1");
}

ChaosExpansion ChaosExpansion::constant(int dimension, double value) {
  ChaosExpansion f(dimension);
  f.set_coefficient(MultiIndex::zero(dimension), value);
  return f;
}

ChaosExpansion ChaosExpansion::coordinate(int dimension, int axis) {
  ChaosExpansion f(dimension);
  f.set_coefficient(MultiIndex::unit(dimension, axis), 1.0);
  return f;
}

ChaosExpansion ChaosExpansion::basis_element(const MultiIndex& alpha, double coefficient) {
  ChaosExpansion f(alpha.dimension());
  f.set_coefficient(alpha, coefficient);
  return f;
}

int ChaosExpansion::degree() const {
  // Graded order makes the last key the highest-degree one.
  return coefficients_.empty() ? 0 : coefficients_.rbegin()->first.order();
}

double ChaosExpansion::coefficient(const MultiIndex& alpha) const {
  check_key(alpha);
  const auto it = coefficients_.find(alpha);
  return it == coefficients_.end() ? 0.0 : it->second;
}

void ChaosExpansion::set_coefficient(const MultiIndex& alpha, double value) {
  check_key(alpha);
  if (std::abs(value) < kCoefficientPruneTolerance) {
    coefficients_.erase(alpha);
  } else {
    coefficients_[alpha] = value;
  }
}

void ChaosExpansion::add_coefficient(const MultiIndex& alpha, double delta) {
  check_key(alpha);
  const auto it = coefficients_.find(alpha);
  set_coefficient(alpha, (it == coefficients_.end() ? 0.0 : it->second) + delta);
}

double ChaosExpansion::squared_norm() const {
  double s = 0.0;
  for (const auto& [alpha, c] : coefficients_) s += c * c;
  return s;
}

double ChaosExpansion::norm() const { return std::sqrt(squared_norm()); }

ChaosExpansion& ChaosExpansion::operator+=(const ChaosExpansion& other) {
  check_same_dimension(other);
  for (const auto& [alpha, c] : other.coefficients_) coefficients_[alpha] += c;
  prune();
  return *this;
}

ChaosExpansion& ChaosExpansion::operator-=(const ChaosExpansion& other) {
  check_same_dimension(other);
  for (const auto& [alpha, c] : other.coefficients_) coefficients_[alpha] -= c;
  prune();
  return *this;
}

ChaosExpansion& ChaosExpansion::operator*=(double scale) {
  for (auto& [alpha, c] : coefficients_) c *= scale;
  prune();
  return *this;
}

ChaosExpansion operator*(const ChaosExpansion& a, const ChaosExpansion& b) {
  a.check_same_dimension(b);
  const int n = a.dimension_;
  ChaosExpansion out(n);
  std::vector<int> k(static_cast<std::size_t>(n));
  std::vector<int> gamma(static_cast<std::size_t>(n));
  for (const auto& [ai, ac] : a.coefficients_) {
    for (const auto& [bi, bc] : b.coefficients_) {
      const double cab = ac * bc;
      // Odometer over k_i = 0..min(a_i, b_i) per coordinate.
      std::fill(k.begin(), k.end(), 0);
      while (true) {
        double lin = cab;
        for (int i = 0; i < n; ++i) {
          lin *= hermite_product_coefficient(ai[i], bi[i], k[static_cast<std::size_t>(i)]);
          gamma[static_cast<std::size_t>(i)] = ai[i] + bi[i] - 2 * k[static_cast<std::size_t>(i)];
        }
        out.coefficients_[MultiIndex(gamma)] += lin;
        int axis = n - 1;
        while (axis >= 0) {
          if (++k[static_cast<std::size_t>(axis)] <= std::min(ai[axis], bi[axis])) break;
          k[static_cast<std::size_t>(axis)] = 0;
          --axis;
        }
        if (axis < 0) break;
      }
    }
  }
  out.prune();
  return out;
}

void ChaosExpansion::check_key(const MultiIndex& alpha) const {
  if (alpha.dimension() != dimension_) {
    throw std::invalid_argument("ChaosExpansion: index dimension " +
                                std::to_string(alpha.dimension()) +
                                " does not match expansion dimension " +
                                std::to_string(dimension_));
  }
}

void ChaosExpansion::check_same_dimension(const ChaosExpansion& other) const {
  if (other.dimension_ != dimension_) {
    throw std::invalid_argument("ChaosExpansion: dimension mismatch");
  }
}

void ChaosExpansion::prune() {
  for (auto it = coefficients_.begin(); it != coefficients_.end();) {
    if (std::abs(it->second) < kCoefficientPruneTolerance) {
      it = coefficients_.erase(it);
    } else {
      ++it;
    }
  }
}

double evaluate_expansion(const ChaosExpansion& f, const Eigen::VectorXd& point) {
  if (point.size() != f.dimension()) {
    throw std::invalid_argument("evaluate_expansion: point dimension mismatch");
  }
  if (f.is_zero()) return 0.0;
  const Eigen::MatrixXd table = normalized_hermite_table(f.degree(), point);
  double value = 0.0;
  for (const auto& [alpha, c] : f.coefficients()) {
    double basis = 1.0;
    for (int i = 0; i < f.dimension(); ++i) basis *= table(alpha[i], i);
    value += c * basis;
  }
  return value;
}

GridFunction expansion_to_grid(const ChaosExpansion& f, const QuadratureGrid& grid) {
  if (grid.dimension() != f.dimension()) {
    throw std::invalid_argument("expansion_to_grid: grid dimension mismatch");
  }
  GridFunction g{grid, Eigen::VectorXd(grid.node_count())};
  for (Eigen::Index r = 0; r < grid.node_count(); ++r) {
    g.values(r) = evaluate_expansion(f, grid.node(r));
  }
  return g;
}

ChaosExpansion project_to_expansion(const GridFunction& g, int max_degree) {
  const QuadratureGrid& grid = g.grid;
  if (grid.node_count() == 0) throw std::invalid_argument("project_to_expansion: empty grid");
  if (g.values.size() != grid.node_count()) {
    throw std::invalid_argument("project_to_expansion: value count does not match grid");
  }
  const int n = grid.dimension();
  const std::vector<MultiIndex> basis = enumerate_multi_indices(n, max_degree);

  // One Neumaier accumulator per coefficient, nodes visited in ascending
  // order for determinism.
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd comps = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  const Eigen::VectorXd& w = grid.weights();
  for (Eigen::Index r = 0; r < grid.node_count(); ++r) {
    const Eigen::MatrixXd table = normalized_hermite_table(max_degree, grid.node(r));
    const double wg = w(r) * g.values(r);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      double basis_value = 1.0;
      for (int i = 0; i < n; ++i) basis_value *= table(basis[j][i], i);
      const double term = wg * basis_value;
      const Eigen::Index jj = static_cast<Eigen::Index>(j);
      const double t = sums(jj) + term;
      if (std::abs(sums(jj)) >= std::abs(term)) {
        comps(jj) += (sums(jj) - t) + term;
      } else {
        comps(jj) += (term - t) + sums(jj);
      }
      sums(jj) = t;
    }
  }

  ChaosExpansion f(n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Eigen::Index jj = static_cast<Eigen::Index>(j);
    f.set_coefficient(basis[j], sums(jj) + comps(jj));
  }
  return f;
}

double max_coefficient_difference(const ChaosExpansion& a, const ChaosExpansion& b) {
  double worst = 0.0;
  for (const auto& [alpha, c] : a.coefficients()) {
    worst = std::max(worst, std::abs(c - b.coefficient(alpha)));
  }
  for (const auto& [alpha, c] : b.coefficients()) {
    worst = std::max(worst, std::abs(c - a.coefficient(alpha)));
  }
  return worst;
}

double inner_product(const ChaosExpansion& a, const ChaosExpansion& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  const bool a_smaller = a.term_count() <= b.term_count();
  const ChaosExpansion& small = a_smaller ? a : b;
  const ChaosExpansion& large = a_smaller ? b : a;
  double s = 0.0;
  for (const auto& [alpha, c] : small.coefficients()) s += c * large.coefficient(alpha);
  return s;
}

}  // namespace oulab
