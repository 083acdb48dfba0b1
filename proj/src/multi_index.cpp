#include "oulab/multi_index.hpp"

#include <numeric>
#include <stdexcept>

namespace oulab {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) {
    throw std::invalid_argument("MultiIndex: dimension must be at least 1");
  }
  for (int e : exponents_) {
    if (e < 0) {
      throw std::invalid_argument("MultiIndex: exponents must be non-negative");
    }
  }
  order_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex MultiIndex::zero(int dimension) {
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

MultiIndex MultiIndex::unit(int dimension, int axis) {
  if (axis < 0 || axis >= dimension) {
    throw std::invalid_argument("MultiIndex::unit: axis out of range");
  }
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  e[static_cast<std::size_t>(axis)] = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::raised(int axis) const {
  std::vector<int> e = exponents_;
  e.at(static_cast<std::size_t>(axis)) += 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::lowered(int axis) const {
  std::vector<int> e = exponents_;
  int& entry = e.at(static_cast<std::size_t>(axis));
  if (entry == 0) {
    throw std::invalid_argument("MultiIndex::lowered: exponent already zero");
  }
  entry -= 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::max_support_axis() const {
  for (int i = dimension() - 1; i >= 0; --i) {
    if (exponents_[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.order() != b.order()) return a.order() < b.order();
  // Within a degree, (2,0) precedes (1,1) precedes (0,2).
  return a.exponents() > b.exponents();
}

namespace {

void enumerate_degree(int remaining, int axis, std::vector<int>& current,
                      std::vector<MultiIndex>& out) {
  const int n = static_cast<int>(current.size());
  if (axis == n - 1) {
    current[static_cast<std::size_t>(axis)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(axis)] = e;
    enumerate_degree(remaining - e, axis + 1, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int dimension, int max_degree) {
  if (dimension < 1) throw std::invalid_argument("enumerate_multi_indices: dimension must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("enumerate_multi_indices: max_degree must be >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<std::size_t>(dimension), 0);
  for (int degree = 0; degree <= max_degree; ++degree) {
    enumerate_degree(degree, 0, current, out);
  }
  return out;
}

std::string to_string(const MultiIndex& alpha) {
  std::string s = "(";
  for (int i = 0; i < alpha.dimension(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(alpha[i]);
  }
  s += ")";
  return s;
}

}  // namespace oulab
