// Probabilists' Hermite polynomials and the orthonormal tensor family they
// generate for the standard Gaussian measure.
#pragma once

#include <Eigen/Core>

#include "oulab/multi_index.hpp"

namespace oulab {

/// He_k(x) by the three-term recurrence He_{k+1} = x He_k - k He_{k-1},
/// He_0 = 1, He_1 = x. Orthogonal for the standard Gaussian with
/// ||He_k||^2 = k!.
double hermite_eval(int degree, double x);

/// He_0(x), ..., He_max(x) in one recurrence pass.
Eigen::VectorXd hermite_eval_upto(int max_degree, double x);

double factorial_as_double(int k);
double inv_sqrt_factorial(int k);

/// Orthonormal tensor element h_alpha(x) = prod_i He_{alpha_i}(x_i) / sqrt(alpha_i!).
double normalized_hermite_eval(const MultiIndex& alpha, const Eigen::VectorXd& point);

/// Table T(k, i) = He_k(x_i) / sqrt(k!) for k = 0..max_degree; one column per
/// coordinate. Basis values become row products across columns.
Eigen::MatrixXd normalized_hermite_table(int max_degree, const Eigen::VectorXd& point);

/// 1-D product linearization in the orthonormal family:
/// h_a h_b = sum_{k=0}^{min(a,b)} hermite_product_coefficient(a, b, k) h_{a+b-2k}.
double hermite_product_coefficient(int a, int b, int k);

}  // namespace oulab
