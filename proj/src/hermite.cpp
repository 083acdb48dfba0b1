#include "oulab/hermite.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace oulab {

namespace {

// 170! is the largest factorial representable as a finite double.
constexpr int kMaxFactorialArg = 170;

const std::array<double, kMaxFactorialArg + 1>& factorial_table() {
  static const std::array<double, kMaxFactorialArg + 1> table = [] {
    std::array<double, kMaxFactorialArg + 1> t{};
    t[0] = 1.0;
    for (int k = 1; k <= kMaxFactorialArg; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * k;
    return t;
  }();
  return table;
}

}  // namespace

double factorial_as_double(int k) {
  if (k < 0 || k > kMaxFactorialArg) {
    throw std::invalid_argument("factorial_as_double: argument out of range");
  }
  return factorial_table()[static_cast<std::size_t>(k)];
}

double inv_sqrt_factorial(int k) { return 1.0 / std::sqrt(factorial_as_double(k)); }

double hermite_eval(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("hermite_eval: degree must be >= 0");
  if (degree == 0) return 1.0;
  double prev = 1.0;  // He_0
  double curr = x;    // He_1
  for (int k = 1; k < degree; ++k) {
    const double next = x * curr - k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

Eigen::VectorXd hermite_eval_upto(int max_degree, double x) {
  if (max_degree < 0) throw std::invalid_argument("hermite_eval_upto: max_degree must be >= 0");
  Eigen::VectorXd values(max_degree + 1);
  values(0) = 1.0;
  if (max_degree >= 1) values(1) = x;
  for (int k = 1; k < max_degree; ++k) {
    values(k + 1) = x * values(k) - k * values(k - 1);
  }
  return values;
}

double normalized_hermite_eval(const MultiIndex& alpha, const Eigen::VectorXd& point) {
  if (alpha.dimension() != point.size()) {
    throw std::invalid_argument("normalized_hermite_eval: point dimension does not match index");
  }
  double value = 1.0;
  for (int i = 0; i < alpha.dimension(); ++i) {
    value *= hermite_eval(alpha[i], point(i)) * inv_sqrt_factorial(alpha[i]);
  }
  return value;
}

Eigen::MatrixXd normalized_hermite_table(int max_degree, const Eigen::VectorXd& point) {
  Eigen::MatrixXd table(max_degree + 1, point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    table.col(i) = hermite_eval_upto(max_degree, point(i));
    for (int k = 0; k <= max_degree; ++k) table(k, i) *= inv_sqrt_factorial(k);
  }
  return table;
}

double hermite_product_coefficient(int a, int b, int k) {
  if (a < 0 || b < 0 || k < 0 || k > std::min(a, b)) {
    throw std::invalid_argument("hermite_product_coefficient: require 0 <= k <= min(a, b)");
  }
  // He_a He_b = sum_k k! C(a,k) C(b,k) He_{a+b-2k}; rescale to the
  // orthonormal family via He_m = sqrt(m!) h_m.
  const double fa = factorial_as_double(a);
  const double fb = factorial_as_double(b);
  const double fk = factorial_as_double(k);
  const double binom_a = fa / (fk * factorial_as_double(a - k));
  const double binom_b = fb / (fk * factorial_as_double(b - k));
  return fk * binom_a * binom_b * std::sqrt(factorial_as_double(a + b - 2 * k) / (fa * fb));
}

}  // namespace oulab
