#ifndef HKRANK_RATIONAL_HPP
#define HKRANK_RATIONAL_HPP

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hkrank {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a finite decimal such as "0.1553" or "-2.39".
/// Decimals are read exactly (0.1553 == 1553/10000). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// n/d in lowest terms. Throws std::invalid_argument when d == 0.
Rational ratio(long n, long d);

/// Canonical form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Rational floor(const Rational& q);

Rational pow2(unsigned exponent);

RationalVector add(std::span<const Rational> x, std::span<const Rational> y);
RationalVector scale(const Rational& s, std::span<const Rational> x);
Rational dot(std::span<const Rational> x, std::span<const Rational> y);

/// Rank of the given rows over the rationals (exact Gaussian elimination).
std::size_t exact_rank(std::vector<RationalVector> rows);

}  // namespace hkrank

#endif
