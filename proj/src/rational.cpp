#include "hkrank/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hkrank {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+')) num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) throw std::invalid_argument("malformed rational: " + s);
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(mpz_class(num, 10), d);
    q.canonicalize();
    return q;
  }
  bool negative = false;
  std::string_view body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  std::string digits;
  std::size_t frac_len = 0;
  if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot_pos);
    std::string_view frac_part = body.substr(dot_pos + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw std::invalid_argument("malformed decimal: " + s);
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = frac_part.size();
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed rational: " + s);
    digits = std::string(body);
  }
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

Rational ratio(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational floor(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(out);
}

Rational pow2(unsigned exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, exponent);
  return Rational(p);
}

RationalVector add(std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
  RationalVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

RationalVector scale(const Rational& s, std::span<const Rational> x) {
  RationalVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  return out;
}

Rational dot(std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

std::size_t exact_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace hkrank
