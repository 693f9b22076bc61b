#include "hkrank/repro.hpp"

#include <doctest.h>

#include <atomic>
#include <set>

using namespace hkrank;

TEST_CASE("manifest lists every criterion once") {
  const auto& m = repro_manifest();
  REQUIRE(m.size() == 11);
  std::set<int> ids;
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i].id == static_cast<int>(i) + 1);
    ids.insert(m[i].id);
  }
  CHECK(ids.size() == 11);
  CHECK(m[10].expected_failure);
  CHECK_THROWS(run_criterion(12));
}

TEST_CASE("single criteria run") {
  const auto r = run_criterion(1);
  CHECK(r.pass);
  CHECK(r.name == "H_7 depth-2 certificate");
  CHECK(verdict(r) == "PASS");
  const auto r11 = run_criterion(11);
  CHECK_FALSE(r11.pass);
  CHECK(verdict(r11) == "FAIL (expected)");
  CHECK(all_as_expected({r, r11}));
  CriterionResult broken = r;
  broken.pass = false;
  CHECK_FALSE(all_as_expected({broken}));
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<std::atomic<int>> hits(101);
  parallel_for(0, 100, 4, [&](int i) { hits[i]++; });
  for (auto& h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(0, 10, 3, [](int i) {
    if (i == 5) throw std::runtime_error("boom");
  }));
}
