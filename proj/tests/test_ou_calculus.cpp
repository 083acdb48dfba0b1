#include <doctest.h>

#include <cmath>

#include "oulab/ou_calculus.hpp"
#include "oulab/random.hpp"
#include "test_helpers.hpp"

using namespace oulab;
using test::expansion;
using test::idx;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// x^2 = sqrt(2) h_2 + h_0 in one dimension.
ChaosExpansion x_squared() { return expansion(1, {{{2}, kSqrt2}, {{0}, 1.0}}); }

}  // namespace

TEST_SUITE("ou_calculus") {

TEST_CASE("gradient examples") {
  CHECK(gradient(ChaosExpansion::constant(2, 5.0)).components[0].is_zero());
  CHECK(gradient(ChaosExpansion::constant(2, 5.0)).components[1].is_zero());

  // d/dx x^2 = 2x.
  const VectorExpansion g = gradient(x_squared());
  CHECK(g.components[0].coefficient(idx({1})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g.components[0].term_count() == 1);

  // grad(xy) = (y, x).
  const ChaosExpansion xy = expansion(2, {{{1, 1}, 1.0}});
  const VectorExpansion gxy = gradient(xy);
  CHECK(gxy.components[0].coefficient(idx({0, 1})) == doctest::Approx(1.0));
  CHECK(gxy.components[1].coefficient(idx({1, 0})) == doctest::Approx(1.0));
}

TEST_CASE("hessian examples and symmetry") {
  CHECK(hessian(ChaosExpansion::coordinate(2, 0)).at(0, 0).is_zero());

  const MatrixExpansion h = hessian(x_squared());
  CHECK(h.at(0, 0).coefficient(idx({0})) == doctest::Approx(2.0).epsilon(1e-15));

  const ChaosExpansion xy = expansion(2, {{{1, 1}, 1.0}});
  const MatrixExpansion hxy = hessian(xy);
  CHECK(hxy.at(0, 0).is_zero());
  CHECK(hxy.at(0, 1).coefficient(idx({0, 0})) == doctest::Approx(1.0));
  CHECK(hxy.at(1, 0).coefficient(idx({0, 0})) == doctest::Approx(1.0));

  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const ChaosExpansion f = random_expansion(rng, 3, 4, -1.0, 1.0);
    const MatrixExpansion hf = hessian(f);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < i; ++j) {
        CHECK(max_coefficient_difference(hf.at(i, j), hf.at(j, i)) == 0.0);
      }
    }
  }
}

TEST_CASE("divergence examples and the two routes") {
  VectorExpansion zero(1);
  CHECK(divergence(zero).is_zero());

  // delta(1) = x for the standard Gaussian.
  VectorExpansion ones(1);
  ones.components[0] = ChaosExpansion::constant(1, 1.0);
  CHECK(divergence(ones).coefficient(idx({1})) == doctest::Approx(1.0).epsilon(1e-15));

  // delta(x) = x^2 - 1 = sqrt(2) h_2.
  VectorExpansion xfield(1);
  xfield.components[0] = ChaosExpansion::coordinate(1, 0);
  const ChaosExpansion d = divergence(xfield);
  CHECK(d.coefficient(idx({2})) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(d.term_count() == 1);

  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(1, 3);
    VectorExpansion z(n);
    for (int i = 0; i < n; ++i) z.components[i] = random_expansion(rng, n, 3, -1.0, 1.0);
    const ChaosExpansion raising = divergence(z, DivergencePath::raising);
    const ChaosExpansion direct = divergence(z, DivergencePath::direct);
    CHECK(max_coefficient_difference(raising, direct) <= 1e-13);
  }
}

TEST_CASE("divergence is adjoint to the gradient") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(1, 3);
    VectorExpansion z(n);
    for (int i = 0; i < n; ++i) z.components[i] = random_expansion(rng, n, 3, -1.0, 1.0);
    const ChaosExpansion g = random_expansion(rng, n, 3, -1.0, 1.0);

    // <delta Z, G> = <Z, grad G>, first by coefficients, then by quadrature.
    const double lhs = inner_product(divergence(z), g);
    const VectorExpansion grad_g = gradient(g);
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) rhs += inner_product(z.components[i], grad_g.components[i]);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));

    const QuadratureGrid grid = gauss_hermite_grid(n, 5);
    const GridFunction dz = expansion_to_grid(divergence(z), grid);
    const GridFunction gv = expansion_to_grid(g, grid);
    const double lhs_quad = integrate(grid, (dz.values.array() * gv.values.array()).matrix());
    const GridFunction dot = expansion_to_grid(field_inner_product(z, grad_g), grid);
    CHECK(std::abs(lhs_quad - integrate(dot)) <= 1e-12 * std::max(1.0, std::abs(lhs_quad)));
  }
}

TEST_CASE("generator examples and the two paths") {
  CHECK(apply_generator(ChaosExpansion::constant(1, 2.0)).is_zero());

  const ChaosExpansion h2 = ChaosExpansion::basis_element(idx({2}));
  CHECK(apply_generator(h2).coefficient(idx({2})) == doctest::Approx(-2.0).epsilon(1e-15));

  // L x^2 = 2 - 2x^2 (f'' - x f').
  const ChaosExpansion lx2 = apply_generator(x_squared());
  for (double x : {-1.5, 0.0, 0.3, 2.0}) {
    CHECK(evaluate_expansion(lx2, test::point1(x)) ==
          doctest::Approx(2.0 - 2.0 * x * x).epsilon(1e-13));
  }

  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const ChaosExpansion f = random_expansion(rng, n, 4, -1.0, 1.0);
    CHECK(max_coefficient_difference(apply_generator(f, GeneratorPath::spectral),
                                     apply_generator(f, GeneratorPath::direct)) <= 1e-13);
    CHECK(max_coefficient_difference(apply_generator(f), -divergence(gradient(f))) <= 1e-13);
  }
}

TEST_CASE("semigroup examples") {
  const ChaosExpansion f = expansion(1, {{{0}, 1.0}, {{1}, 0.5}, {{3}, -0.25}});
  CHECK(max_coefficient_difference(apply_semigroup(f, 0.0), f) == 0.0);

  // P_{ln 2} x = x / 2.
  const ChaosExpansion half_x = apply_semigroup(ChaosExpansion::coordinate(1, 0), std::log(2.0));
  CHECK(half_x.coefficient(idx({1})) == doctest::Approx(0.5).epsilon(1e-15));

  // P_t (x^2 - 1) = e^{-2t} (x^2 - 1).
  const ChaosExpansion he2 = expansion(1, {{{2}, kSqrt2}});
  const double t = 0.7;
  CHECK(apply_semigroup(he2, t).coefficient(idx({2})) ==
        doctest::Approx(kSqrt2 * std::exp(-2.0 * t)).epsilon(1e-15));

  CHECK_THROWS_AS(apply_semigroup(f, -0.1), std::invalid_argument);
}

TEST_CASE("semigroup law and gradient commutation") {
  Rng rng(47);
  const double log2 = std::log(2.0);
  const ChaosExpansion x = ChaosExpansion::coordinate(1, 0);
  CHECK(apply_semigroup(apply_semigroup(x, log2), log2).coefficient(idx({1})) ==
        doctest::Approx(0.25).epsilon(1e-14));

  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const ChaosExpansion f = random_expansion(rng, n, 4, -1.0, 1.0);
    const ChaosExpansion two_step = apply_semigroup(apply_semigroup(f, 0.3), 0.7);
    CHECK(max_coefficient_difference(two_step, apply_semigroup(f, 1.0)) <= 1e-12);

    const double t = rng.uniform(0.1, 2.0);
    const VectorExpansion lhs = gradient(apply_semigroup(f, t));
    const VectorExpansion grad_f = gradient(f);
    for (int i = 0; i < n; ++i) {
      const ChaosExpansion rhs = std::exp(-t) * apply_semigroup(grad_f.components[i], t);
      CHECK(max_coefficient_difference(lhs.components[i], rhs) <= 1e-12);
    }
  }
}

TEST_CASE("time derivative is the generator composed with the flow") {
  CHECK(time_derivative(ChaosExpansion::constant(1, 4.0), 1.3).is_zero());

  // d/dt P_t x at t = 0 is -x.
  CHECK(time_derivative(ChaosExpansion::coordinate(1, 0), 0.0).coefficient(idx({1})) ==
        doctest::Approx(-1.0).epsilon(1e-15));

  // For x^2 - 1 at t = ln 2 the derivative is -(x^2 - 1)/2.
  const ChaosExpansion he2 = expansion(1, {{{2}, kSqrt2}});
  CHECK(time_derivative(he2, std::log(2.0)).coefficient(idx({2})) ==
        doctest::Approx(-kSqrt2 / 2.0).epsilon(1e-14));

  Rng rng(53);
  const ChaosExpansion f = random_expansion(rng, 2, 4, -1.0, 1.0);
  CHECK(max_coefficient_difference(time_derivative(f, 0.4),
                                   apply_generator(apply_semigroup(f, 0.4))) == 0.0);
}

TEST_CASE("coordinate projection is the conditional expectation") {
  // E[ xy + x | x ] = x.
  const ChaosExpansion f = expansion(2, {{{1, 1}, 1.0}, {{1, 0}, 1.0}});
  const ChaosExpansion projected = project_dimensions(f, 1);
  CHECK(projected.coefficient(idx({1, 0})) == doctest::Approx(1.0));
  CHECK(projected.term_count() == 1);

  // Idempotent on functions of the retained coordinates.
  const ChaosExpansion only_x = expansion(2, {{{2, 0}, 0.7}, {{0, 0}, 1.0}});
  CHECK(max_coefficient_difference(project_dimensions(only_x, 1), only_x) == 0.0);

  // Pure chaos in a dropped coordinate projects to zero.
  CHECK(project_dimensions(ChaosExpansion::basis_element(idx({0, 2})), 1).is_zero());

  CHECK_THROWS_AS(project_dimensions(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(project_dimensions(f, 3), std::invalid_argument);
}

TEST_CASE("mehler backend agrees with the spectral backend") {
  Rng rng(59);
  for (int n : {1, 2}) {
    const ChaosExpansion f = random_expansion(rng, n, 6, -1.0, 1.0);
    for (double t : {0.1, 0.5, 1.0}) {
      const ChaosExpansion spectral = apply_semigroup(f, t);
      const ChaosExpansion mehler = apply_semigroup(f, t, SemigroupBackend::mehler());
      CHECK(max_coefficient_difference(spectral, mehler) <=
            1e-10 * std::max(1.0, spectral.norm()));
    }
  }
}

TEST_CASE("mehler backend is stable for tiny times") {
  const ChaosExpansion f = expansion(1, {{{0}, 1.0}, {{1}, 0.5}, {{4}, 0.25}});
  for (double t : {1e-8, 1e-4}) {
    const ChaosExpansion mehler = apply_semigroup(f, t, SemigroupBackend::mehler());
    CHECK(max_coefficient_difference(apply_semigroup(f, t), mehler) <= 1e-10);
  }
}

TEST_CASE("mass is invariant under the flow") {
  Rng rng(61);
  const ChaosExpansion f = random_expansion(rng, 2, 4, -1.0, 1.0);
  const MultiIndex zero = MultiIndex::zero(2);
  for (double t : {0.1, 1.0, 3.0}) {
    CHECK(apply_semigroup(f, t).coefficient(zero) == f.coefficient(zero));
  }
}

}  // TEST_SUITE
