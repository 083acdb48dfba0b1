// Deterministic random generation for the seeded check suites. splitmix64 is
// used directly so streams are reproducible across platforms and standard
// libraries.
#pragma once

#include <cstdint>
#include <string_view>

#include "oulab/chaos_expansion.hpp"

namespace oulab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [lo, hi) with 53 random bits.
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t state_;
};

/// Independent stream per named suite under one run seed.
Rng derive_rng(std::uint64_t seed, std::string_view stream_name);

/// Random polynomial chaos: every coefficient with |alpha| <= max_degree drawn
/// uniformly from [lo, hi].
ChaosExpansion random_expansion(Rng& rng, int dimension, int max_degree, double lo, double hi);

/// Random density c0 + perturbation with c0 in [constant_min, constant_max]
/// and the perturbation rescaled so its sup over the grid nodes is at most
/// perturbation_sup.
ChaosExpansion random_valid_density(Rng& rng, int dimension, int max_degree,
                                    const QuadratureGrid& grid, double constant_min,
                                    double constant_max, double perturbation_sup);

}  // namespace oulab
