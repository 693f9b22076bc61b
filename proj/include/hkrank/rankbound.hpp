#ifndef HKRANK_RANKBOUND_HPP
#define HKRANK_RANKBOUND_HPP

#include "hkrank/interval.hpp"
#include "hkrank/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hkrank {

struct SlopeThresholds {
  int k = 0;
  Rational u1_exact;  // -2(k-1)/(k-2)
  Interval u1, u2, u3, u4;
};

/// Requires k >= 3.
SlopeThresholds thresholds(int k, mpfr_prec_t prec = default_precision());

/// Thresholds for every k in [3, kmax], indexed by k. Read-only after construction.
class ThresholdTable {
 public:
  explicit ThresholdTable(int kmax, mpfr_prec_t prec = default_precision());
  const SlopeThresholds& at(int k) const;
  int kmax() const { return static_cast<int>(table_.size()) + 2; }

 private:
  std::vector<SlopeThresholds> table_;
};

/// gamma = (k-2)(9k-10) l^2 + 8(k-1)(3k-4) l + 16(k-1)^2
Interval gamma_value(int k, const Interval& l);
/// h without domain checks; throws std::domain_error only when gamma may be negative.
Interval h_unchecked(int k, const Interval& l);
/// Requires k >= 5 and l certainly inside (u1(k), u3(k)); throws std::domain_error otherwise.
Interval h_step(int k, const Interval& l, const ThresholdTable* table = nullptr);

/// Smallest multiple of 2^-64 that is >= q.
Rational round_up_to_grid(const Rational& q);

struct SlopeSequence {
  int k = 0;
  std::vector<Rational> values;  // values[0] = l_1, ..., values[p-1] = l_p
  int p() const { return static_cast<int>(values.size()); }
};

/// l_p given; l_{i-1} := l_i + h(k-p+i, l_i), rounded up to the grid so that the step
/// condition holds for the stored rationals.
SlopeSequence make_sequence(int k, int p, const Rational& last, const ThresholdTable* table = nullptr);

struct ConditionRecord {
  std::string name;
  Interval lhs;
  Interval rhs;
  bool strict = true;
  Tri holds = Tri::undecided;
  double margin = 0;  // certified lower bound of rhs - lhs
};

struct SequenceReport {
  int k = 0;
  int p = 0;
  bool ok = false;
  int bound = 0;  // p + 1 when ok
  std::vector<ConditionRecord> checks;
  std::vector<std::string> failures;
};

/// Strict conditions must hold with certified margin >= min_margin; undecided fails.
SequenceReport verify_sequence(const SlopeSequence& seq, double min_margin = 0.0,
                               const ThresholdTable* table = nullptr);

struct GreedyResult {
  SlopeSequence sequence;
  SequenceReport report;
  Rational eps;
  int attempts = 0;
};

inline const Rational kDefaultEps{1, 1000000};

/// Longest sequence from l_p = u1(k) + eps upward; eps halved up to 20 times when
/// nothing verifies. Returns nullopt if no sequence of length >= 1 exists. Requires k >= 5.
std::optional<GreedyResult> greedy_search(int k, const Rational& eps = kDefaultEps,
                                          const ThresholdTable* table = nullptr);

/// 2 for 4 <= k <= 6, 3 for 7 <= k <= 9, floor(19(k-2)/100) + 3 for k >= 10.
int analytic_lower_bound(int k);

struct UpperBoundChain {
  int k = 0;
  int bound = 0;
  std::vector<std::string> steps;
};

/// k - 2 by destroy recursion from r+(H_3) = 1. Structural steps are re-checked for
/// k <= verify_up_to. Requires k >= 3.
UpperBoundChain destroy_upper_bound(int k, int verify_up_to = 8);

enum class RankMethod { certificate_tree, slope_sequence, analytic_formula, destroy_upper };
std::string to_string(RankMethod m);

struct RankBoundReport {
  int k = 0;
  RankMethod method = RankMethod::slope_sequence;
  int bound = 0;
  nlohmann::json witness;
};

nlohmann::json to_json(const SlopeSequence& seq);
SlopeSequence sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SequenceReport& rep);
nlohmann::json to_json(const RankBoundReport& rep);

/// Greedy lower bound plus analytic and destroy bounds for one k.
std::vector<RankBoundReport> rank_reports(int k, const Rational& eps = kDefaultEps,
                                          const ThresholdTable* table = nullptr);

}  // namespace hkrank

#endif
