#include <doctest.h>

#include "oulab/multi_index.hpp"
#include "test_helpers.hpp"

using namespace oulab;
using test::idx;

TEST_SUITE("multi_index") {

TEST_CASE("construction validates entries") {
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{1, -1}), std::invalid_argument);
  CHECK(idx({0, 3, 2}).order() == 5);
  CHECK(idx({0, 0}).order() == 0);
}

TEST_CASE("dimension is part of the identity") {
  CHECK(idx({1, 0}) != idx({1}));
  CHECK(idx({1, 0}) == idx({1, 0}));
  CHECK(idx({2, 1}) != idx({1, 2}));
}

TEST_CASE("raised and lowered shift one axis") {
  CHECK(idx({1, 2}).raised(0) == idx({2, 2}));
  CHECK(idx({1, 2}).lowered(1) == idx({1, 1}));
  CHECK_THROWS_AS(idx({0, 2}).lowered(0), std::invalid_argument);
}

TEST_CASE("max_support_axis finds the last active coordinate") {
  CHECK(idx({0, 0, 0}).max_support_axis() == -1);
  CHECK(idx({1, 0, 0}).max_support_axis() == 0);
  CHECK(idx({1, 0, 2}).max_support_axis() == 2);
}

TEST_CASE("enumeration follows graded-lex order") {
  const auto one_dim = enumerate_multi_indices(1, 2);
  REQUIRE(one_dim.size() == 3);
  CHECK(one_dim[0] == idx({0}));
  CHECK(one_dim[1] == idx({1}));
  CHECK(one_dim[2] == idx({2}));

  const auto two_dim = enumerate_multi_indices(2, 1);
  REQUIRE(two_dim.size() == 3);
  CHECK(two_dim[0] == idx({0, 0}));
  CHECK(two_dim[1] == idx({1, 0}));
  CHECK(two_dim[2] == idx({0, 1}));

  const auto full = enumerate_multi_indices(2, 2);
  REQUIRE(full.size() == 6);
  CHECK(full[3] == idx({2, 0}));
  CHECK(full[4] == idx({1, 1}));
  CHECK(full[5] == idx({0, 2}));
}

TEST_CASE("enumeration count is C(n + d, d)") {
  CHECK(enumerate_multi_indices(3, 4).size() == 35);
  CHECK(enumerate_multi_indices(4, 0).size() == 1);
  CHECK(enumerate_multi_indices(1, 7).size() == 8);
}

TEST_CASE("comparator is consistent with enumeration") {
  GradedLexLess less;
  const auto all = enumerate_multi_indices(3, 3);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    CHECK(less(all[i], all[i + 1]));
    CHECK_FALSE(less(all[i + 1], all[i]));
  }
}

TEST_CASE("to_string formats the exponents") {
  CHECK(to_string(idx({2, 0, 1})) == "(2,0,1)");
}

}  // TEST_SUITE
