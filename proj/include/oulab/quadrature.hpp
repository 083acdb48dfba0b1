// Tensor Gauss-Hermite quadrature for the standard Gaussian measure, with a
// node budget guarding full tensor grids.
#pragma once

#include <Eigen/Core>

#include <memory>
#include <stdexcept>

namespace oulab {

inline constexpr long kDefaultNodeBudget = 2'000'000;

/// Thrown when a requested tensor grid would exceed the node budget.
class NodeBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor Gauss-Hermite rule: m^n nodes, probability-normalized weights,
/// exact for gamma_n-moments of degree <= 2m-1 per coordinate. Copies share
/// the node storage.
class QuadratureGrid {
 public:
  QuadratureGrid() = default;

  int dimension() const { return data_ ? data_->dimension : 0; }
  int order_per_dim() const { return data_ ? data_->order : 0; }
  Eigen::Index node_count() const { return data_ ? data_->nodes.rows() : 0; }

  /// Node r as an n-vector (row r of the node matrix).
  Eigen::VectorXd node(Eigen::Index r) const { return data_->nodes.row(r); }
  const Eigen::MatrixXd& nodes() const { return data_->nodes; }
  const Eigen::VectorXd& weights() const { return data_->weights; }

  bool same_shape(const QuadratureGrid& other) const {
    return dimension() == other.dimension() && order_per_dim() == other.order_per_dim() &&
           node_count() == other.node_count();
  }

 private:
  struct Data {
    int dimension = 0;
    int order = 0;
    Eigen::MatrixXd nodes;    // node_count x dimension
    Eigen::VectorXd weights;  // node_count
  };
  std::shared_ptr<const Data> data_;

  friend QuadratureGrid gauss_hermite_grid(int, int, long);
};

/// 1-D probabilists' Gauss-Hermite rule by Golub-Welsch on the Jacobi matrix
/// of the He recurrence (off-diagonal sqrt(k)). Nodes ascending, weights
/// normalized to sum 1.
void gauss_hermite_rule(int order, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

QuadratureGrid gauss_hermite_grid(int dimension, int order_per_dim,
                                  long node_budget = kDefaultNodeBudget);

/// Values of some function at every node of a grid.
struct GridFunction {
  QuadratureGrid grid;
  Eigen::VectorXd values;
};

/// Quadrature sum of nodewise values: ascending node index, Neumaier
/// compensation, so results are deterministic.
double integrate(const QuadratureGrid& grid, const Eigen::VectorXd& values);
double integrate(const GridFunction& g);

}  // namespace oulab
