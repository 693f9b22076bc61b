#include "hkrank/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hkrank {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::undecided: return "undecided";
  }
  return "undecided";
}

mpfr_prec_t default_precision() {
  static const mpfr_prec_t prec = [] {
    long bits = 128;
    if (const char* env = std::getenv("HKRANK_PRECISION_BITS")) {
      char* end = nullptr;
      long parsed = std::strtol(env, &end, 10);
      if (end != env && *end == '\0') bits = parsed;
    }
    return static_cast<mpfr_prec_t>(std::clamp(bits, 53L, 4096L));
  }();
  return prec;
}

Interval::Interval(Bare, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long n, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_si(lo_, n, MPFR_RNDD);
  mpfr_set_si(hi_, n, MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) : prec_(prec) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(Bare{}, other.prec_) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  if (prec_ != other.prec_) {
    prec_ = other.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Rational Interval::lower() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::upper() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

Rational Interval::width() const { return upper() - lower(); }

double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

Interval operator+(const Interval& x, const Interval& y) {
  Interval r(Interval::Bare{}, std::max(x.prec_, y.prec_));
  mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& x, const Interval& y) {
  Interval r(Interval::Bare{}, std::max(x.prec_, y.prec_));
  mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& x) {
  Interval r(Interval::Bare{}, x.prec_);
  mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& x, const Interval& y) {
  const mpfr_prec_t prec = std::max(x.prec_, y.prec_);
  Interval r(Interval::Bare{}, prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {x.lo_, x.hi_};
  const mpfr_srcptr ys[2] = {y.lo_, y.hi_};
  bool first = true;
  for (auto xe : xs) {
    for (auto ye : ys) {
      mpfr_mul(t, xe, ye, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, xe, ye, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& x, const Interval& y) {
  if (y.contains_zero()) throw std::domain_error("interval division by an enclosure containing zero");
  const mpfr_prec_t prec = std::max(x.prec_, y.prec_);
  Interval r(Interval::Bare{}, prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {x.lo_, x.hi_};
  const mpfr_srcptr ys[2] = {y.lo_, y.hi_};
  bool first = true;
  for (auto xe : xs) {
    for (auto ye : ys) {
      mpfr_div(t, xe, ye, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, xe, ye, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval square(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) {
    Interval r(Interval::Bare{}, x.prec_);
    mpfr_sqr(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, x.hi_, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(x.hi_) <= 0) return square(-x);
  Interval r(Interval::Bare{}, x.prec_);
  mpfr_t t;
  mpfr_init2(t, x.prec_);
  mpfr_sqr(r.hi_, x.lo_, MPFR_RNDU);
  mpfr_sqr(t, x.hi_, MPFR_RNDU);
  if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
  mpfr_set_zero(r.lo_, 1);
  mpfr_clear(t);
  return r;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("square root of an enclosure with negative lower end");
  Interval r(Interval::Bare{}, x.prec_);
  mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("logarithm of a non-positive enclosure");
  Interval r(Interval::Bare{}, x.prec_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Tri certainly_less(const Interval& x, const Interval& y) {
  if (mpfr_less_p(x.hi_, y.lo_)) return Tri::yes;
  if (mpfr_greaterequal_p(x.lo_, y.hi_)) return Tri::no;
  return Tri::undecided;
}

Tri certainly_less_equal(const Interval& x, const Interval& y) {
  if (mpfr_lessequal_p(x.hi_, y.lo_)) return Tri::yes;
  if (mpfr_greater_p(x.lo_, y.hi_)) return Tri::no;
  return Tri::undecided;
}

Tri certainly_negative(const Interval& x) { return certainly_less(x, Interval(0L, x.precision())); }

Tri certainly_positive(const Interval& x) { return certainly_less(Interval(0L, x.precision()), x); }

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  std::ostringstream out;
  out.precision(17);
  out << "[" << x.lower_double() << ", " << x.upper_double() << "]";
  return os << out.str();
}

}  // namespace hkrank
