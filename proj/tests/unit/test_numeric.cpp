#include "hkrank/eigen.hpp"
#include "hkrank/interval.hpp"
#include "hkrank/rational.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hkrank;

TEST_CASE("parse_rational reads decimals and fractions exactly") {
  CHECK(parse_rational("0.1553") == ratio(1553, 10000));
  CHECK(parse_rational("0.005428") == ratio(5428, 1000000));
  CHECK(parse_rational("08278") == 8278);
  CHECK(parse_rational("-2.39") == ratio(-239, 100));
  CHECK(parse_rational("6/4") == ratio(3, 2));
  CHECK(parse_rational("-010/4") == ratio(-5, 2));
  CHECK(parse_rational(".5") == ratio(1, 2));
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1.2.3"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("ratio is canonical") {
  const Rational q = ratio(6, 4);
  CHECK(q.get_num() == 3);
  CHECK(q.get_den() == 2);
  CHECK(ratio(3, 3) == 1);
  CHECK(ratio(2, -4) == ratio(-1, 2));
  CHECK_THROWS(ratio(1, 0));
}

TEST_CASE("floor, pow2 and exact rank") {
  CHECK(floor(ratio(44, 5)) == 8);
  CHECK(floor(ratio(-1, 2)) == -1);
  CHECK(pow2(64) == Rational(mpz_class("18446744073709551616", 10)));
  CHECK(exact_rank({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}) == 2);
  CHECK(exact_rank({{1, 0}, {0, 1}}) == 2);
  CHECK(exact_rank({}) == 0);
}

TEST_CASE("interval arithmetic encloses the exact value") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 997);
  for (int t = 0; t < 200; ++t) {
    const Rational x = ratio(num(rng), den(rng));
    const Rational y = ratio(num(rng), den(rng));
    const Interval ix(x), iy(y);
    CHECK((ix + iy).contains(x + y));
    CHECK((ix - iy).contains(x - y));
    CHECK((ix * iy).contains(x * y));
    if (y != 0) CHECK((ix / iy).contains(x / y));
    CHECK(square(ix).contains(x * x));
  }
}

TEST_CASE("sqrt and log enclosures") {
  const Interval two(2L);
  const Interval r = sqrt(two);
  CHECK(r.lower_double() <= std::sqrt(2.0));
  CHECK(r.upper_double() >= std::sqrt(2.0));
  CHECK(to_double(r.width()) < 1e-30);
  CHECK(certainly_less(square(r), Interval(ratio(20001, 10000))) == Tri::yes);
  const Interval l = log(Interval(8L)) / log(two);
  CHECK(l.contains(3));
  CHECK_THROWS_AS(sqrt(Interval(-1L)), std::domain_error);
  CHECK_THROWS_AS(log(Interval(0L)), std::domain_error);
  CHECK_THROWS_AS(Interval(1L) / Interval(Rational(-1), Rational(1)), std::domain_error);
}

TEST_CASE("three-valued comparisons") {
  const Interval a(Rational(0), Rational(1));
  const Interval b(Rational(2), Rational(3));
  CHECK(certainly_less(a, b) == Tri::yes);
  CHECK(certainly_less(b, a) == Tri::no);
  CHECK(certainly_less(a, Interval(ratio(1, 2))) == Tri::undecided);
  CHECK(certainly_negative(Interval(-1L)) == Tri::yes);
  CHECK(certainly_positive(a) == Tri::undecided);
  CHECK(certainly_less_equal(Interval(1L), Interval(1L)) == Tri::yes);
  CHECK_THROWS(Interval(Rational(1), Rational(0)));
}

TEST_CASE("Jacobi eigenvalues") {
  SymmetricMatrix<double> m(2);
  m.set(0, 0, 2);
  m.set(1, 1, 2);
  m.set(0, 1, 1);
  const auto ev = symmetric_eigenvalues(m);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));

  SymmetricMatrix<double> id(4);
  for (int i = 0; i < 4; ++i) id.set(i, i, 1);
  CHECK(psd_eigen_oracle(id, 1e-12));
  SymmetricMatrix<double> ind(2);
  ind.set(0, 0, 1);
  ind.set(1, 1, -1);
  CHECK_FALSE(psd_eigen_oracle(ind, 1e-12));
}

TEST_CASE("Jacobi preserves trace and Frobenius norm") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {3, 7, 15}) {
    SymmetricMatrix<double> m(n);
    double trace = 0, frob = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) m.set(i, j, u(rng));
    }
    for (int i = 0; i < n; ++i) {
      trace += m(i, i);
      for (int j = 0; j < n; ++j) frob += m(i, j) * m(i, j);
    }
    const auto ev = symmetric_eigenvalues(m);
    double s = 0, s2 = 0;
    for (double e : ev) {
      s += e;
      s2 += e * e;
    }
    CHECK(s == doctest::Approx(trace).epsilon(1e-12));
    CHECK(s2 == doctest::Approx(frob).epsilon(1e-12));
    CHECK(std::is_sorted(ev.begin(), ev.end()));
  }
}
