#ifndef HKRANK_INTERVAL_HPP
#define HKRANK_INTERVAL_HPP

#include "hkrank/rational.hpp"

#include <mpfr.h>

#include <iosfwd>
#include <string>

namespace hkrank {

/// Three-valued verdict for comparisons whose operands are only known up to an enclosure.
enum class Tri { no, yes, undecided };

std::string to_string(Tri t);

/// Working precision in bits for new enclosures. Reads HKRANK_PRECISION_BITS once
/// (default 128, clamped to [53, 4096]).
mpfr_prec_t default_precision();

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the lower
/// endpoint down and the upper endpoint up, so the true value of any expression
/// built from exact inputs is always contained in the result.
class Interval {
 public:
  /// [0, 0] at working precision.
  Interval() : Interval(0L) {}
  explicit Interval(const Rational& q, mpfr_prec_t prec = default_precision());
  explicit Interval(long n, mpfr_prec_t prec = default_precision());
  Interval(int n, mpfr_prec_t prec = default_precision()) : Interval(static_cast<long>(n), prec) {}
  /// Hull of two rationals; throws if lo > hi.
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec = default_precision());

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return prec_; }

  Rational lower() const;
  Rational upper() const;
  /// Width hi - lo, exact.
  Rational width() const;
  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up
  double mid_double() const;

  bool contains(const Rational& q) const;
  bool contains_zero() const;

  friend Interval operator+(const Interval& x, const Interval& y);
  friend Interval operator-(const Interval& x, const Interval& y);
  friend Interval operator*(const Interval& x, const Interval& y);
  /// Throws std::domain_error when the divisor contains zero.
  friend Interval operator/(const Interval& x, const Interval& y);
  friend Interval operator-(const Interval& x);

  Interval& operator+=(const Interval& y) { return *this = *this + y; }
  Interval& operator-=(const Interval& y) { return *this = *this - y; }
  Interval& operator*=(const Interval& y) { return *this = *this * y; }

  friend Interval square(const Interval& x);
  /// Throws std::domain_error unless lo >= 0.
  friend Interval sqrt(const Interval& x);
  /// Throws std::domain_error unless lo > 0.
  friend Interval log(const Interval& x);

  /// x < y for every pair of points: yes if hi(x) < lo(y), no if lo(x) >= hi(y).
  friend Tri certainly_less(const Interval& x, const Interval& y);
  friend Tri certainly_less_equal(const Interval& x, const Interval& y);

  friend std::ostream& operator<<(std::ostream& os, const Interval& x);

 private:
  struct Bare {};
  Interval(Bare, mpfr_prec_t prec);

  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// sign of the enclosed value, or undecided when the enclosure straddles zero.
Tri certainly_negative(const Interval& x);
Tri certainly_positive(const Interval& x);

}  // namespace hkrank

#endif
