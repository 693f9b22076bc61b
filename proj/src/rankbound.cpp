#include "hkrank/rankbound.hpp"

#include "hkrank/graph.hpp"
#include "hkrank/shadow.hpp"

#include <algorithm>
#include <stdexcept>

namespace hkrank {

SlopeThresholds thresholds(int k, mpfr_prec_t prec) {
  if (k < 3) throw std::invalid_argument("thresholds require k >= 3");
  SlopeThresholds t;
  t.k = k;
  t.u1_exact = ratio(-2 * (k - 1), k - 2);
  t.u1 = Interval(t.u1_exact, prec);
  const long kl = k;
  const Interval kk(kl, prec);
  const Interval disc(17 * kl * kl - 48 * kl + 32, prec);
  t.u2 = (Interval(kl - 4, prec) - sqrt(disc)) / Interval(2 * (kl - 2), prec);
  const Interval root = sqrt(Interval(kl - 1, prec));
  t.u3 = Interval(4 * (kl - 1), prec) * (Interval(-3 * kl + 4, prec) - Interval(2L, prec) * root) /
         Interval((kl - 2) * (9 * kl - 10), prec);
  t.u4 = tangent_slope_at_apex(k, prec);
  return t;
}

ThresholdTable::ThresholdTable(int kmax, mpfr_prec_t prec) {
  for (int k = 3; k <= kmax; ++k) table_.push_back(thresholds(k, prec));
}

const SlopeThresholds& ThresholdTable::at(int k) const {
  if (k < 3 || k > kmax()) throw std::out_of_range("threshold table does not cover k = " + std::to_string(k));
  return table_[k - 3];
}

namespace {

// Local fallback when no table (or a too-small one) is supplied.
class Lookup {
 public:
  Lookup(const ThresholdTable* table, mpfr_prec_t prec) : table_(table), prec_(prec) {}
  const SlopeThresholds& at(int k) {
    if (table_ && k <= table_->kmax()) return table_->at(k);
    for (const auto& t : local_) {
      if (t.k == k) return t;
    }
    local_.push_back(thresholds(k, prec_));
    return local_.back();
  }

 private:
  const ThresholdTable* table_;
  mpfr_prec_t prec_;
  std::vector<SlopeThresholds> local_;
};

}  // namespace

Interval gamma_value(int k, const Interval& l) {
  const mpfr_prec_t prec = l.precision();
  const long kl = k;
  return Interval((kl - 2) * (9 * kl - 10), prec) * square(l) + Interval(8 * (kl - 1) * (3 * kl - 4), prec) * l +
         Interval(16 * (kl - 1) * (kl - 1), prec);
}

Interval h_unchecked(int k, const Interval& l) {
  const mpfr_prec_t prec = l.precision();
  const long kl = k;
  const Interval g = gamma_value(k, l);
  if (g.lower() < 0) throw std::domain_error("gamma is not certainly nonnegative");
  const Interval num = Interval(4 * (kl - 2), prec) * l + Interval(8 * (kl - 1), prec);
  const Interval den = sqrt(g) + Interval(3 * (kl - 2), prec) * l + Interval(8 * (kl - 1), prec);
  return num / den - Interval(2L, prec) - l;
}

Interval h_step(int k, const Interval& l, const ThresholdTable* table) {
  if (k < 5) throw std::domain_error("h requires k >= 5");
  Lookup lookup(table, l.precision());
  const auto& t = lookup.at(k);
  if (certainly_less(t.u1, l) != Tri::yes || certainly_less(l, t.u3) != Tri::yes)
    throw std::domain_error("slope outside (u1(k), u3(k)) for k = " + std::to_string(k));
  return h_unchecked(k, l);
}

Rational round_up_to_grid(const Rational& q) {
  const Rational scale = pow2(64);
  const Rational scaled = q * scale;
  mpz_class up;
  mpz_cdiv_q(up.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(up) / scale;
}

SlopeSequence make_sequence(int k, int p, const Rational& last, const ThresholdTable* table) {
  if (p < 1) throw std::invalid_argument("sequence length must be at least 1");
  SlopeSequence seq;
  seq.k = k;
  seq.values.assign(p, Rational(0));
  seq.values[p - 1] = last;
  for (int i = p; i >= 2; --i) {
    const Interval li(seq.values[i - 1]);
    const Interval next = li + h_step(k - p + i, li, table);
    seq.values[i - 2] = round_up_to_grid(next.upper());
  }
  return seq;
}

SequenceReport verify_sequence(const SlopeSequence& seq, double min_margin, const ThresholdTable* table) {
  SequenceReport rep;
  rep.k = seq.k;
  rep.p = seq.p();
  const int k = seq.k;
  const int p = seq.p();
  if (p < 1) {
    rep.failures.push_back("empty sequence");
    return rep;
  }
  if (k < 5) {
    rep.failures.push_back("sequence verification requires k >= 5");
    return rep;
  }
  if (k - p + 1 < 4) {
    rep.failures.push_back("sequence too long: first-level graph H_" + std::to_string(k - p + 1) + " needs k >= 4");
    return rep;
  }
  if (p >= 2 && k - p + 2 < 5) {
    rep.failures.push_back("sequence too long: step at H_" + std::to_string(k - p + 2) + " needs k >= 5");
    return rep;
  }
  Lookup lookup(table, default_precision());
  auto strict = [&](const std::string& name, const Interval& lhs, const Interval& rhs) {
    ConditionRecord c{name, lhs, rhs, true, certainly_less(lhs, rhs), (rhs - lhs).lower_double()};
    if (c.holds == Tri::yes && c.margin < min_margin) c.holds = Tri::undecided;
    if (c.holds != Tri::yes) rep.failures.push_back(name + " (" + to_string(c.holds) + ")");
    rep.checks.push_back(std::move(c));
  };
  auto weak = [&](const std::string& name, const Interval& lhs, const Interval& rhs) {
    ConditionRecord c{name, lhs, rhs, false, certainly_less_equal(lhs, rhs), (rhs - lhs).lower_double()};
    if (c.holds != Tri::yes) rep.failures.push_back(name + " (" + to_string(c.holds) + ")");
    rep.checks.push_back(std::move(c));
  };
  auto l = [&](int i) { return Interval(seq.values[i - 1]); };
  const std::string kp1 = std::to_string(k - p + 1);
  strict("l_" + std::to_string(p) + " > u1(" + std::to_string(k) + ")", lookup.at(k).u1, l(p));
  if (p >= 2) strict("l_2 < u3(" + std::to_string(k - p + 2) + ")", l(2), lookup.at(k - p + 2).u3);
  strict("l_1 < u4(" + kp1 + ")", l(1), lookup.at(k - p + 1).u4);
  for (int i = p; i >= 2; --i) {
    const int kk = k - p + i;
    const auto& t = lookup.at(kk);
    const std::string li = "l_" + std::to_string(i);
    const std::string ks = std::to_string(kk);
    strict(li + " > u1(" + ks + ")", t.u1, l(i));
    strict(li + " < u3(" + ks + ")", l(i), t.u3);
    if (certainly_less(t.u1, l(i)) != Tri::yes || certainly_less(l(i), t.u3) != Tri::yes) continue;
    try {
      weak(li + " + h(" + ks + ", " + li + ") <= l_" + std::to_string(i - 1), l(i) + h_unchecked(kk, l(i)), l(i - 1));
    } catch (const std::domain_error& e) {
      rep.failures.push_back(li + ": " + e.what());
    }
  }
  rep.ok = rep.failures.empty();
  rep.bound = rep.ok ? p + 1 : 0;
  return rep;
}

std::optional<GreedyResult> greedy_search(int k, const Rational& eps, const ThresholdTable* table) {
  if (k < 5) throw std::invalid_argument("greedy search requires k >= 5");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  Lookup lookup(table, default_precision());
  Rational e = eps;
  for (int attempt = 1; attempt <= 21; ++attempt, e /= 2) {
    std::vector<Rational> m{lookup.at(k).u1_exact + e};
    std::optional<int> best;
    if (certainly_less(Interval(m[0]), lookup.at(k).u4) == Tri::yes) best = 0;
    for (int j = 0;; ++j) {
      const int kk = k - j;
      if (kk < 5) break;
      const auto& t = lookup.at(kk);
      const Interval mj(m[j]);
      if (certainly_less(t.u1, mj) != Tri::yes || certainly_less(mj, t.u3) != Tri::yes) break;
      m.push_back(round_up_to_grid((mj + h_unchecked(kk, mj)).upper()));
      const int nj = j + 1;
      if (k - nj >= 4 && certainly_less(Interval(m[nj]), lookup.at(k - nj).u4) == Tri::yes &&
          certainly_less(mj, lookup.at(k - nj + 1).u3) == Tri::yes)
        best = nj;
    }
    if (!best) continue;
    SlopeSequence seq;
    seq.k = k;
    for (int j = *best; j >= 0; --j) seq.values.push_back(m[j]);
    SequenceReport rep = verify_sequence(seq, 0.0, table);
    if (rep.ok) return GreedyResult{std::move(seq), std::move(rep), e, attempt};
  }
  return std::nullopt;
}

int analytic_lower_bound(int k) {
  if (k < 4) throw std::invalid_argument("analytic bound requires k >= 4");
  if (k <= 6) return 2;
  if (k <= 9) return 3;
  return 19 * (k - 2) / 100 + 3;
}

UpperBoundChain destroy_upper_bound(int k, int verify_up_to) {
  if (k < 3) throw std::invalid_argument("upper bound chain requires k >= 3");
  UpperBoundChain chain;
  chain.k = k;
  auto checked = [&](int kk) { return kk <= verify_up_to; };
  {
    std::string s = "r+(H_3) = 1: H_3 destroy 1_1 is the 6-cycle and H_3 destroy 1_0, 1_2 are bipartite";
    if (checked(3)) {
      const Graph h3 = build_hk(3);
      const bool ok = is_isomorphic(destroy(h3, "1_1"), build_hk(2)) && is_bipartite(destroy(h3, "1_0")) &&
                      is_bipartite(destroy(h3, "1_2")) && !is_bipartite(h3);
      s += ok ? " (checked)" : " (CHECK FAILED)";
      if (!ok) throw std::logic_error(s);
    }
    chain.steps.push_back(s);
  }
  for (int kk = 4; kk <= k; ++kk) {
    std::string s = "r+(H_" + std::to_string(kk) + ") <= r+(H_" + std::to_string(kk - 1) + ") + 1: destroy i_1 gives H_" +
                    std::to_string(kk - 1) + ", destroy i_0 and i_2 give bipartite graphs";
    if (checked(kk)) {
      const Graph h = build_hk(kk);
      const bool ok = is_isomorphic(destroy(h, "1_1"), build_hk(kk - 1)) && is_bipartite(destroy(h, "1_0")) &&
                      is_bipartite(destroy(h, "1_2"));
      s += ok ? " (checked)" : " (CHECK FAILED)";
      if (!ok) throw std::logic_error(s);
    }
    chain.steps.push_back(s);
  }
  chain.steps.push_back("vertex-count bound floor(3k/3) = " + std::to_string(k) + " is weaker");
  chain.bound = k - 2;
  return chain;
}

std::string to_string(RankMethod m) {
  switch (m) {
    case RankMethod::certificate_tree: return "certificate-tree";
    case RankMethod::slope_sequence: return "slope-sequence";
    case RankMethod::analytic_formula: return "analytic-formula";
    case RankMethod::destroy_upper: return "destroy-upper";
  }
  return "unknown";
}

nlohmann::json to_json(const SlopeSequence& seq) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : seq.values) values.push_back(to_string(v));
  nlohmann::json approx = nlohmann::json::array();
  for (const auto& v : seq.values) approx.push_back(to_double(v));
  return {{"k", seq.k}, {"p", seq.p()}, {"values", values}, {"values_approx", approx}};
}

SlopeSequence sequence_from_json(const nlohmann::json& j) {
  SlopeSequence seq;
  seq.k = j.at("k").get<int>();
  for (const auto& v : j.at("values")) seq.values.push_back(parse_rational(v.get<std::string>()));
  return seq;
}

nlohmann::json to_json(const SequenceReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", {c.lhs.lower_double(), c.lhs.upper_double()}},
                      {"rhs", {c.rhs.lower_double(), c.rhs.upper_double()}},
                      {"strict", c.strict},
                      {"holds", to_string(c.holds)},
                      {"margin", c.margin}});
  }
  return {{"k", rep.k}, {"p", rep.p}, {"ok", rep.ok}, {"bound", rep.bound}, {"checks", checks}, {"failures", rep.failures}};
}

nlohmann::json to_json(const RankBoundReport& rep) {
  return {{"k", rep.k}, {"method", to_string(rep.method)}, {"bound", rep.bound}, {"witness", rep.witness}};
}

std::vector<RankBoundReport> rank_reports(int k, const Rational& eps, const ThresholdTable* table) {
  std::vector<RankBoundReport> out;
  if (k >= 5) {
    if (auto g = greedy_search(k, eps, table)) {
      nlohmann::json w = to_json(g->sequence);
      w["verification"] = to_json(g->report);
      w["eps"] = to_string(g->eps);
      out.push_back({k, RankMethod::slope_sequence, g->report.bound, w});
    }
  }
  if (k >= 4) {
    out.push_back({k, RankMethod::analytic_formula, analytic_lower_bound(k),
                   {{"formula", k >= 10 ? "floor(19(k-2)/100)+3" : (k >= 7 ? "3" : "2")}}});
  }
  if (k >= 3) {
    const auto chain = destroy_upper_bound(k, std::min(k, 8));
    out.push_back({k, RankMethod::destroy_upper, chain.bound, {{"steps", chain.steps}}});
  }
  return out;
}

}  // namespace hkrank
