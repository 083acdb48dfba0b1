#include "oulab/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace oulab {

void gauss_hermite_rule(int order, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (order < 1) throw std::invalid_argument("gauss_hermite_rule: order must be >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_hermite_rule: eigensolver failed");
  }
  nodes = solver.eigenvalues();
  weights = solver.eigenvectors().row(0).array().square();
  weights /= weights.sum();
  // The rule is symmetric about 0; enforce the symmetry the solver only
  // delivers to roundoff.
  for (int i = 0, j = order - 1; i < j; ++i, --j) {
    const double x = 0.5 * (nodes(i) - nodes(j));
    nodes(i) = x;
    nodes(j) = -x;
    const double w = 0.5 * (weights(i) + weights(j));
    weights(i) = weights(j) = w;
  }
  if (order % 2 == 1) nodes(order / 2) = 0.0;
}

QuadratureGrid gauss_hermite_grid(int dimension, int order_per_dim, long node_budget) {
  if (dimension < 1) throw std::invalid_argument("gauss_hermite_grid: dimension must be >= 1");
  if (order_per_dim < 1) throw std::invalid_argument("gauss_hermite_grid: order must be >= 1");

  long long count = 1;
  for (int i = 0; i < dimension; ++i) {
    count *= order_per_dim;
    if (count > node_budget) {
      throw NodeBudgetError(
          "gauss_hermite_grid: " + std::to_string(order_per_dim) + "^" +
          std::to_string(dimension) + " nodes exceed the budget of " +
          std::to_string(node_budget) +
          "; reduce the dimension or grid order (a Monte-Carlo fallback is out of scope), "
          "or raise OU_LAB_NODE_BUDGET");
    }
  }

  Eigen::VectorXd nodes_1d, weights_1d;
  gauss_hermite_rule(order_per_dim, nodes_1d, weights_1d);

  auto data = std::make_shared<QuadratureGrid::Data>();
  data->dimension = dimension;
  data->order = order_per_dim;
  data->nodes.resize(count, dimension);
  data->weights.resize(count);

  std::vector<int> digit(static_cast<std::size_t>(dimension), 0);
  for (long long r = 0; r < count; ++r) {
    double w = 1.0;
    for (int i = 0; i < dimension; ++i) {
      data->nodes(r, i) = nodes_1d(digit[static_cast<std::size_t>(i)]);
      w *= weights_1d(digit[static_cast<std::size_t>(i)]);
    }
    data->weights(r) = w;
    // Odometer, last axis fastest.
    for (int i = dimension - 1; i >= 0; --i) {
      if (++digit[static_cast<std::size_t>(i)] < order_per_dim) break;
      digit[static_cast<std::size_t>(i)] = 0;
    }
  }

  QuadratureGrid grid;
  grid.data_ = std::move(data);
  return grid;
}

double integrate(const QuadratureGrid& grid, const Eigen::VectorXd& values) {
  if (values.size() != grid.node_count()) {
    throw std::invalid_argument("integrate: value count does not match grid");
  }
  const Eigen::VectorXd& w = grid.weights();
  double sum = 0.0;
  double compensation = 0.0;
  for (Eigen::Index r = 0; r < values.size(); ++r) {
    const double term = w(r) * values(r);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

double integrate(const GridFunction& g) { return integrate(g.grid, g.values); }

}  // namespace oulab
