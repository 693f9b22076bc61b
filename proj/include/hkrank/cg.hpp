#ifndef HKRANK_CG_HPP
#define HKRANK_CG_HPP

#include "hkrank/interval.hpp"
#include "hkrank/polytopes.hpp"
#include "hkrank/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hkrank {

struct CgRankBounds {
  int k = 0;
  Interval lower;  // log_4((3k-7)/2)
  Interval upper;  // log_2(k-1)
  std::optional<int> upper_exact;  // set when k-1 is a power of two
};

/// Requires k >= 3.
CgRankBounds cg_rank_bounds(int k, mpfr_prec_t prec = default_precision());

struct CgWitness {
  int d = 0;
  long k = 0;               // (2^{2d+1}+7)/3
  std::vector<Rational> points;  // scalar multiples of the all-ones vector, x^(1)..x^(d)
  bool k_integral = false;
  bool violation = false;         // x^(d) |B_{j,j'}| > k - 1
  bool threshold = false;         // integer threshold step for every i
  bool telescoping = false;       // x^(i) = 1/2 - sum_{t<=i} 2^{-(2t+1)}
  std::optional<bool> sampled_valid_inequalities;  // run only for k <= 9
  int samples = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Requires 1 <= d <= 30.
CgWitness verify_cg_lower_witness(int d, int samples = 200, unsigned seed = 12345);

/// Minimum of beta/s over integers 0 < s < bound with beta/s > 1/3.
Rational threshold_minimum(long bound);

/// Random nonnegative integral a, beta = max over stable sets; checks beta / a^T e > 1/3.
/// Returns the number of violations found in `samples` draws. Requires 2 <= k <= 9.
int sampled_cut_check(int k, int samples, unsigned seed, int max_coeff = 3);

struct CgStep {
  std::string name;
  std::string kind;  // premise | average | sum | combine | floor
  LinearInequality inequality;
  std::string note;
};

struct CgDerivation {
  int d = 0;
  int k = 0;
  int j = 1;
  int j_prime = 2;
  std::vector<CgStep> steps;
  Rational final_rhs;
  Rational floored_rhs;
  bool lhs_matches_b = false;
  bool rhs_simplifies = false;  // equals k - 2 + k/(2^{d-1}+1) with 1 < k/(2^{d-1}+1) < 2
  bool materialized = false;    // averages recomputed over every subset T
  std::optional<bool> steps_valid_by_enumeration;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// k = 2^d + 1; requires 2 <= d <= 12. Subsets T are enumerated explicitly when
/// k <= materialize_up_to, and every step is checked against STAB(H_k) when k <= 11.
CgDerivation run_cg_upper_derivation(int d, int materialize_up_to = 9);

/// S_0 = ([k]_0 \ {j_0}) u {j_1}, S_1 = ([k]_1 \ {j_1}) u {j_0, j_2}, S_2 = ([k]_2 \ {j_2}) u {j_1}:
/// all stable and chi_S0 + chi_S1 + chi_S2 = e + e_{j_1}. Requires 2 <= k <= 8, j in [k].
bool three_set_cover(int k, int j);

nlohmann::json to_json(const CgWitness& w);
nlohmann::json to_json(const CgDerivation& der);

}  // namespace hkrank

#endif
