// Multi-index bookkeeping for tensor Hermite bases.
#pragma once

#include <string>
#include <vector>

namespace oulab {

/// Exponent vector indexing one tensor Hermite basis element. The dimension
/// (entry count) is part of the identity: (1,0) and (1) are distinct indices.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(int dimension);
  static MultiIndex unit(int dimension, int axis);

  int dimension() const { return static_cast<int>(exponents_.size()); }
  int order() const { return order_; }
  int operator[](int axis) const { return exponents_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& exponents() const { return exponents_; }

  MultiIndex raised(int axis) const;   // alpha + e_axis
  MultiIndex lowered(int axis) const;  // alpha - e_axis; requires alpha[axis] > 0

  /// Largest axis carrying a nonzero exponent, or -1 for the constant index.
  int max_support_axis() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
  std::vector<int> exponents_;
  int order_ = 0;
};

/// Strict weak order: by total degree first, ties broken so that larger
/// leading exponents come first. Enumeration starts (0,0),(1,0),(0,1),(2,0),...
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All indices with |alpha| <= max_degree, in graded-lex order.
/// The count is C(dimension + max_degree, max_degree).
std::vector<MultiIndex> enumerate_multi_indices(int dimension, int max_degree);

std::string to_string(const MultiIndex& alpha);

}  // namespace oulab
