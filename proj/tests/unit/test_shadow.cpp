#include "hkrank/graph.hpp"
#include "hkrank/polytopes.hpp"
#include "hkrank/shadow.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace hkrank;

namespace {

// direct evaluation with q = 1 - sqrt(k/(2k-2))
long double p_direct(int k, long double x, long double y) {
  const long double q = 1.0L - std::sqrt(static_cast<long double>(k) / (2.0L * k - 2.0L));
  return (2 * x * x - x) + 2 * q * q * (y * y - y) + 4 * q * x * y;
}

}  // namespace

TEST_CASE("expand") {
  const auto mid = expand(4, 0, 1);
  for (int i = 1; i <= 4; ++i) {
    CHECK(mid[hk_index(i, 0)] == 0);
    CHECK(mid[hk_index(i, 1)] == 1);
    CHECK(mid[hk_index(i, 2)] == 0);
  }
  const auto outer = expand(2, ratio(1, 2), 0);
  for (int i = 1; i <= 2; ++i) {
    CHECK(outer[hk_index(i, 0)] == ratio(1, 2));
    CHECK(outer[hk_index(i, 2)] == ratio(1, 2));
    CHECK(outer[hk_index(i, 1)] == 0);
  }
  const auto fam = hk_balancing_families(5).second;
  const auto w = expand(5, ratio(2, 7), ratio(3, 11));
  CHECK(symmetrize(build_hk(5), fam, w) == w);
}

TEST_CASE("shadow polygons") {
  CHECK(phi_stab(2) == phi_frac(2));
  const auto p5 = phi_stab(5);
  CHECK(std::find(p5.begin(), p5.end(), ShadowPoint{ratio(1, 5), ratio(4, 5)}) != p5.end());
  CHECK(polygon_subset(phi_stab(6), phi_frac(6)));
  CHECK_FALSE(polygon_subset(phi_frac(6), phi_stab(6)));
}

TEST_CASE("every stable set projects into phi_stab and each vertex is attained") {
  for (int k = 2; k <= 6; ++k) {
    const Graph g = build_hk(k);
    const auto poly = phi_stab(k);
    std::vector<ShadowPoint> pts;
    for (VertexSet s : enumerate_stable_sets(g).sets) {
      int outer = 0, middle = 0;
      for (Vertex v : members(s)) (hk_label_at(v).p == 1 ? middle : outer)++;
      pts.push_back({ratio(outer, 2 * k), ratio(middle, k)});
    }
    for (const auto& p : pts) CHECK(polygon_contains(poly, p));
    for (const auto& v : poly) CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
  }
}

TEST_CASE("convex hull") {
  std::vector<ShadowPoint> pts = {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}, {ratio(1, 2), ratio(3, 2)}};
  const auto hull = convex_hull(pts);
  CHECK(hull.size() == 4);
  CHECK(hull.front() == ShadowPoint{0, 0});
  CHECK(polygon_contains(hull, {1, 0}));
  CHECK_FALSE(polygon_contains(hull, {3, 1}));
}

TEST_CASE("p_k values") {
  for (int k = 3; k <= 12; ++k) {
    CHECK(p_k_eval(k, Rational(0), Rational(0)).contains(0));
    CHECK(p_k_eval(k, ratio(1, 2), Rational(0)).contains(0));
    CHECK(surd_sign(p_k_surd(k, 0, 0)) == 0);
    CHECK(surd_sign(p_k_surd(k, ratio(1, 2), 0)) == 0);
  }
  for (int k = 4; k <= 10; ++k) {
    const Interval v = p_k_eval(k, ratio(1, k), ratio(k - 1, k));
    CHECK(v.contains(0));
    CHECK(to_double(v.width()) < 1e-12);
  }
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> num(0, 1000);
  for (int t = 0; t < 300; ++t) {
    const int k = 3 + t % 20;
    const Rational x = ratio(num(rng), 1000), y = ratio(num(rng), 1000);
    const long double ref = p_direct(k, x.get_d(), y.get_d());
    const Interval v = p_k_eval(k, x, y);
    CHECK(v.lower_double() <= static_cast<double>(ref) + 1e-12);
    CHECK(v.upper_double() >= static_cast<double>(ref) - 1e-12);
    if (std::fabs(static_cast<double>(ref)) > 1e-9) CHECK(surd_sign(p_k_surd(k, x, y)) == (ref > 0 ? 1 : -1));
    const Interval bar = p_k_eval(k, x, y, true);
    const long double qb = 1.0L + std::sqrt(static_cast<long double>(k) / (2.0L * k - 2.0L));
    const long double xd = x.get_d(), yd = y.get_d();
    const long double ref_bar = (2 * xd * xd - xd) + 2 * qb * qb * (yd * yd - yd) + 4 * qb * xd * yd;
    CHECK(bar.lower_double() <= static_cast<double>(ref_bar) + 1e-12);
    CHECK(bar.upper_double() >= static_cast<double>(ref_bar) - 1e-12);
  }
}

TEST_CASE("region C") {
  for (int k = 4; k <= 12; ++k) {
    CHECK(region_c_member(k, ratio(1, k), ratio(k - 1, k)));
    CHECK(region_c_member(k, ratio(1, 2), Rational(0)));
    CHECK_FALSE(region_c_member(k, ratio(1, 2), ratio(1, 2)));
    CHECK_FALSE(region_c_member(k, ratio(-1, 100), Rational(0)));
  }
  for (const auto& v : phi_stab(10)) CHECK(region_c_member(10, v.a, v.b));
  CHECK(region_c_member(7, Interval(ratio(1, 4)), Interval(ratio(1, 4))) == Tri::yes);
}

TEST_CASE("slopes") {
  for (int k = 3; k <= 20; ++k) {
    CHECK(slope(k, ratio(1, 2), ratio(1, 2)) == -1);
    CHECK(slope(k, ratio(1, 2), 0) == ratio(-2 * (k - 1), k - 2));
    CHECK(slope(k, 0, ratio(k - 1, k)) == 0);
    CHECK_THROWS_AS(slope(k, ratio(1, k), 0), std::domain_error);
  }
  const Interval t = tangent_slope_at_apex(10);
  const Interval s = implicit_slope_at_apex(10);
  CHECK(std::fabs(t.mid_double() - s.mid_double()) < 1e-10);
  // above -4/3 and tending to -1, the correction term decays like 1/k
  CHECK(tangent_slope_at_apex(1000000).lower_double() > -4.0 / 3.0);
  CHECK(std::fabs(tangent_slope_at_apex(1000000).mid_double() + 1.0) < 1e-2);
}

TEST_CASE("tangent slope matches a finite difference along the boundary") {
  for (int k : {5, 10, 40}) {
    const Rational h = ratio(1, 100000000);
    const Rational x0 = ratio(1, k);
    const double fd = ((boundary_y(k, x0 + h) - Interval(ratio(k - 1, k))) / Interval(h)).mid_double();
    CHECK(fd == doctest::Approx(tangent_slope_at_apex(k).mid_double()).epsilon(1e-5));
  }
}

TEST_CASE("boundary_y solves p_k = 0") {
  for (int k : {3, 4, 7, 25}) {
    for (int i = 0; i <= 10; ++i) {
      const Rational x = ratio(1, k) + (ratio(1, 2) - ratio(1, k)) * ratio(i, 10);
      const Interval y = boundary_y(k, x);
      const double v = static_cast<double>(p_direct(k, x.get_d(), y.mid_double()));
      CHECK(std::fabs(v) < 1e-12);
    }
    CHECK_THROWS_AS(boundary_y(k, ratio(6, 10)), std::domain_error);
  }
}

TEST_CASE("shadow emission") {
  std::ostringstream csv;
  emit_shadow(10, ShadowFormat::csv, csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,curve");
  int boundary = 0, stab = 0;
  while (std::getline(in, line)) {
    if (line.ends_with(",boundary")) ++boundary;
    if (line.ends_with(",phi_stab")) ++stab;
  }
  CHECK(boundary == kShadowSamples);
  CHECK(stab == 4);

  std::ostringstream svg;
  emit_shadow(10, ShadowFormat::svg, svg);
  CHECK(svg.str().find("id=\"region_c\"") != std::string::npos);
  CHECK(svg.str().find("<polygon") != std::string::npos);

  // k = 3: narrow region, samples still land on p_3 = 0
  for (const auto& s : shadow_samples(3, 32)) {
    if (s.curve == "boundary") CHECK(std::fabs(static_cast<double>(p_direct(3, s.x, s.y))) < 1e-9);
  }
}
