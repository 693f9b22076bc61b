#include "hkrank/cg.hpp"
#include "hkrank/graph.hpp"

#include <doctest.h>

#include <cmath>

using namespace hkrank;

TEST_CASE("CG rank bounds") {
  const auto b3 = cg_rank_bounds(3);
  REQUIRE(b3.upper_exact.has_value());
  CHECK(*b3.upper_exact == 1);
  const auto b5 = cg_rank_bounds(5);
  CHECK(*b5.upper_exact == 2);
  CHECK(b5.lower.contains(1));
  CHECK_FALSE(cg_rank_bounds(6).upper_exact.has_value());
  for (int k = 3; k <= 3000; k += 7) CHECK(certainly_less(cg_rank_bounds(k).lower, cg_rank_bounds(k).upper) == Tri::yes);
  CHECK(certainly_less(cg_rank_bounds(1000000).lower, cg_rank_bounds(1000000).upper) == Tri::yes);
}

TEST_CASE("lower-bound witness") {
  const auto w1 = verify_cg_lower_witness(1);
  CHECK(w1.k == 5);
  CHECK(w1.points.back() == ratio(3, 8));
  CHECK(w1.points.back() * 11 == ratio(33, 8));
  CHECK(w1.ok());
  REQUIRE(w1.sampled_valid_inequalities.has_value());
  CHECK(*w1.sampled_valid_inequalities);
  const auto w2 = verify_cg_lower_witness(2);
  CHECK(w2.k == 13);
  CHECK(w2.points.back() == ratio(11, 32));
  for (int d = 1; d <= 6; ++d) CHECK(verify_cg_lower_witness(d).ok());
  CHECK_THROWS(verify_cg_lower_witness(0));
}

TEST_CASE("integer threshold") {
  // s = 1..7: 1, 1/2, 2/3, 1/2, 2/5, 1/2, 3/7
  CHECK(threshold_minimum(8) == ratio(2, 5));
  CHECK(threshold_minimum(8) >= ratio(3, 8));
  CHECK(threshold_minimum(32) >= ratio(11, 32));
}

TEST_CASE("upper-bound derivation") {
  const auto d2 = run_cg_upper_derivation(2);
  CHECK(d2.k == 5);
  CHECK(d2.final_rhs == ratio(14, 3));
  CHECK(d2.floored_rhs == 4);
  CHECK(d2.materialized);
  REQUIRE(d2.steps_valid_by_enumeration.has_value());
  CHECK(*d2.steps_valid_by_enumeration);
  CHECK(d2.ok());

  const auto d3 = run_cg_upper_derivation(3);
  CHECK(d3.final_rhs == 7 + ratio(9, 5));
  CHECK(d3.floored_rhs == 8);
  CHECK(d3.steps_valid_by_enumeration == std::optional<bool>(true));

  const auto d10 = run_cg_upper_derivation(10);
  CHECK(d10.k == 1025);
  CHECK(d10.floored_rhs == 1024);
  CHECK_FALSE(d10.materialized);
  CHECK(d10.ok());
  CHECK_THROWS(run_cg_upper_derivation(1));
}

TEST_CASE("three stable sets covering e plus one vertex") {
  for (int k = 2; k <= 8; ++k) {
    for (int j = 1; j <= k; ++j) CHECK(three_set_cover(k, j));
  }
  CHECK(sampled_cut_check(5, 100, 1) == 0);
  // a = e: beta = alpha(H_k) = k + 1 and 3k < 3(k+1)
  CHECK(3 * 5 < 3 * 6);
}

TEST_CASE("CG JSON") {
  const auto j = to_json(run_cg_upper_derivation(2));
  CHECK(j["floored_rhs"] == "4");
  CHECK(j["ok"] == true);
  CHECK(to_json(verify_cg_lower_witness(1))["k"] == 5);
}
