#include "oulab/random.hpp"

#include <cmath>

namespace oulab {

std::uint64_t Rng::next_u64() {
  // splitmix64 (Vigna); public-domain reference constants.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

Rng derive_rng(std::uint64_t seed, std::string_view stream_name) {
  // FNV-1a over the stream name, folded into the run seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream_name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return Rng(seed ^ h);
}

ChaosExpansion random_expansion(Rng& rng, int dimension, int max_degree, double lo, double hi) {
  ChaosExpansion f(dimension);
  for (const MultiIndex& alpha : enumerate_multi_indices(dimension, max_degree)) {
    f.set_coefficient(alpha, rng.uniform(lo, hi));
  }
  return f;
}

ChaosExpansion random_valid_density(Rng& rng, int dimension, int max_degree,
                                    const QuadratureGrid& grid, double constant_min,
                                    double constant_max, double perturbation_sup) {
  ChaosExpansion perturbation(dimension);
  for (const MultiIndex& alpha : enumerate_multi_indices(dimension, max_degree)) {
    if (alpha.order() == 0) continue;
    perturbation.set_coefficient(alpha, rng.uniform(-1.0, 1.0));
  }
  const double target = rng.uniform(0.25 * perturbation_sup, perturbation_sup);
  const GridFunction values = expansion_to_grid(perturbation, grid);
  const double sup = values.values.array().abs().maxCoeff();
  if (sup > 0.0) perturbation *= target / sup;
  return ChaosExpansion::constant(dimension, rng.uniform(constant_min, constant_max)) +
         perturbation;
}

}  // namespace oulab
