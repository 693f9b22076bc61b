#include "hkrank/rankbound.hpp"

#include <doctest.h>

#include <cmath>

using namespace hkrank;

namespace {

double h_direct(int k, double l) {
  const double g = (k - 2.0) * (9.0 * k - 10.0) * l * l + 8.0 * (k - 1.0) * (3.0 * k - 4.0) * l + 16.0 * (k - 1.0) * (k - 1.0);
  return (4.0 * (k - 2) * l + 8.0 * (k - 1)) / (std::sqrt(g) + 3.0 * (k - 2) * l + 8.0 * (k - 1)) - 2.0 - l;
}

}  // namespace

TEST_CASE("threshold limits") {
  const auto t = thresholds(1000000);
  CHECK(std::fabs(t.u1.mid_double() + 2) < 1e-3);
  CHECK(std::fabs(t.u2.mid_double() - (1 - std::sqrt(17.0)) / 2) < 1e-3);
  CHECK(std::fabs(t.u3.mid_double() + 4.0 / 3.0) < 1e-3);
  // above -4/3 and tending to -1, the correction term decays like 1/k
  CHECK(t.u4.lower_double() > -4.0 / 3.0);
  CHECK(std::fabs(t.u4.mid_double() + 1.0) < 1e-2);
  CHECK(t.u1_exact == ratio(-2 * 999999, 999998));
}

TEST_CASE("threshold ordering") {
  const ThresholdTable table(400);
  for (int k = 5; k <= 400; ++k) {
    const auto& u = table.at(k);
    CHECK(certainly_less(u.u1, u.u2) == Tri::yes);
    CHECK(certainly_less(u.u2, u.u3) == Tri::yes);
    CHECK(certainly_less(u.u3, u.u4) == Tri::yes);
  }
  CHECK_THROWS_AS(table.at(401), std::out_of_range);
  CHECK_THROWS_AS(table.at(2), std::out_of_range);

  const auto u = thresholds(27);
  const Interval golden = (Interval(1L) - sqrt(Interval(17L))) / Interval(2L);
  const Interval four_thirds(ratio(-4, 3));
  CHECK(certainly_less(Interval(-2L), u.u2) == Tri::yes);
  CHECK(certainly_less(u.u2, golden) == Tri::yes);
  CHECK(certainly_less(golden, u.u3) == Tri::yes);
  CHECK(certainly_less(u.u3, four_thirds) == Tri::yes);
  CHECK(certainly_less(four_thirds, u.u4) == Tri::yes);
}

TEST_CASE("h matches a direct evaluation") {
  for (int k : {5, 7, 10, 50, 300}) {
    const auto u = thresholds(k);
    for (int i = 1; i < 20; ++i) {
      const Rational l = u.u1_exact + (u.u3.lower() - u.u1_exact) * ratio(i, 20);
      const Interval h = h_step(k, Interval(l));
      CHECK(h.mid_double() == doctest::Approx(h_direct(k, l.get_d())).epsilon(1e-9));
    }
  }
}

TEST_CASE("h at u1 and its slope there") {
  for (int k = 5; k <= 50; ++k) {
    const auto u = thresholds(k);
    const Interval at = h_unchecked(k, u.u1);
    CHECK(at.lower() <= ratio(2, k - 2));
    CHECK(at.upper() >= ratio(2, k - 2));
    CHECK(to_double(at.width()) < 1e-20);
    const Rational step = ratio(1, 10000000);
    const Interval fd =
        (h_unchecked(k, Interval(u.u1_exact + step)) - h_unchecked(k, Interval(u.u1_exact - step))) /
        Interval(2 * step);
    CHECK(std::fabs(fd.mid_double() + 1.0 / (k - 1)) < 1e-8);
  }
}

TEST_CASE("h step bound on (u1, u2)") {
  for (int k = 5; k <= 60; ++k) {
    const auto u = thresholds(k);
    for (int i = 1; i <= 100; ++i) {
      const Rational l = u.u1_exact + (u.u2.lower() - u.u1_exact) * ratio(i, 101);
      CHECK(certainly_less_equal(h_unchecked(k, Interval(l)), Interval(ratio(2, k - 2))) == Tri::yes);
    }
  }
}

TEST_CASE("h domain") {
  CHECK_THROWS_AS(h_step(4, Interval(-2L)), std::domain_error);
  const auto u = thresholds(10);
  CHECK_THROWS_AS(h_step(10, Interval(u.u1_exact - 1)), std::domain_error);
  CHECK_THROWS_AS(h_step(10, Interval(-1L)), std::domain_error);
}

TEST_CASE("grid rounding") {
  const Rational grid = 1 / pow2(64);
  for (const Rational q : {ratio(-239, 100), ratio(1, 3), Rational(5), ratio(-1, 7)}) {
    const Rational r = round_up_to_grid(q);
    CHECK(r >= q);
    CHECK(r - q < grid);
    CHECK(Rational(r / grid).get_den() == 1);
  }
  CHECK(round_up_to_grid(Rational(3)) == 3);
}

TEST_CASE("stated slope sequences") {
  const auto s7 = make_sequence(7, 2, parse_rational("-2.39"));
  REQUIRE(s7.p() == 2);
  CHECK(s7.values[1] == parse_rational("-2.39"));
  const double l1 = parse_rational("-2.39").get_d() + h_direct(7, -2.39);
  CHECK(s7.values[0].get_d() == doctest::Approx(l1).epsilon(1e-12));
  const auto r7 = verify_sequence(s7, 1e-9);
  CHECK(r7.ok);
  CHECK(r7.bound == 3);

  const auto s10 = make_sequence(10, 3, parse_rational("-2.24"));
  const auto r10 = verify_sequence(s10, 1e-9);
  CHECK(r10.ok);
  CHECK(r10.bound == 4);
  CHECK(sequence_from_json(to_json(s10)).values == s10.values);
}

TEST_CASE("sequence rejections") {
  CHECK_FALSE(verify_sequence(SlopeSequence{7, {}}).ok);
  const auto u = thresholds(7);
  CHECK_FALSE(verify_sequence(SlopeSequence{7, {u.u1_exact}}).ok);
  CHECK_FALSE(verify_sequence(SlopeSequence{7, {Rational(-1)}}).ok);
  // too long for k = 7
  CHECK_FALSE(verify_sequence(make_sequence(7, 2, parse_rational("-2.39")), 1.0).ok);
  auto s = make_sequence(10, 3, parse_rational("-2.24"));
  s.values[0] -= ratio(1, 10);  // breaks the step condition
  CHECK_FALSE(verify_sequence(s).ok);
}

TEST_CASE("greedy search") {
  const auto g7 = greedy_search(7);
  REQUIRE(g7.has_value());
  CHECK(g7->sequence.p() >= 2);
  const auto g10 = greedy_search(10);
  REQUIRE(g10.has_value());
  CHECK(g10->sequence.p() >= 3);
  for (int k : {50, 120, 400}) {
    const auto g = greedy_search(k);
    REQUIRE(g.has_value());
    CHECK(g->report.ok);
    CHECK(g->report.bound >= analytic_lower_bound(k));
    CHECK(4 * g->report.bound > k);
    CHECK(verify_sequence(g->sequence).ok);
  }
}

TEST_CASE("stated bounds") {
  CHECK(analytic_lower_bound(4) == 2);
  CHECK(analytic_lower_bound(7) == 3);
  CHECK(analytic_lower_bound(10) == 4);
  CHECK(analytic_lower_bound(100) == 21);
  CHECK(destroy_upper_bound(3).bound == 1);
  CHECK(destroy_upper_bound(4).bound == 2);
  CHECK(destroy_upper_bound(10).bound == 8);
  const auto reports = rank_reports(7);
  bool has_sequence = false;
  for (const auto& r : reports) has_sequence |= r.method == RankMethod::slope_sequence && r.bound >= 3;
  CHECK(has_sequence);
}
