#include "hkrank/cg.hpp"

#include "hkrank/graph.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace hkrank {

CgRankBounds cg_rank_bounds(int k, mpfr_prec_t prec) {
  if (k < 3) throw std::invalid_argument("CG rank bounds require k >= 3");
  CgRankBounds out;
  out.k = k;
  const Interval four(4L, prec);
  const Interval two(2L, prec);
  const Rational inner = ratio(3 * k - 7, 2);
  // log_4(1) = 0 exactly; keep the enclosure tight there
  out.lower = inner == 1 ? Interval(0L, prec) : log(Interval(inner, prec)) / log(four);
  out.upper = log(Interval(static_cast<long>(k - 1), prec)) / log(two);
  const unsigned km1 = static_cast<unsigned>(k - 1);
  if ((km1 & (km1 - 1)) == 0) {
    int e = 0;
    while ((1U << e) < km1) ++e;
    out.upper_exact = e;
    out.upper = Interval(static_cast<long>(e), prec);
  }
  return out;
}

Rational threshold_minimum(long bound) {
  if (bound < 2) throw std::invalid_argument("threshold needs bound >= 2");
  Rational best = 1;
  for (long s = 1; s < bound; ++s) best = std::min(best, ratio(s / 3 + 1, s));
  return best;
}

int sampled_cut_check(int k, int samples, unsigned seed, int max_coeff) {
  if (k < 2 || k > 9) throw std::invalid_argument("spot check supports 2 <= k <= 9");
  const Graph g = build_hk(k);
  const auto sets = enumerate_stable_sets(g).sets;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(0, max_coeff);
  int violations = 0;
  for (int t = 0; t < samples; ++t) {
    std::vector<long> a(g.order());
    long total = 0;
    for (auto& v : a) {
      v = coeff(rng);
      total += v;
    }
    if (total == 0) {
      --t;
      continue;
    }
    long beta = 0;
    for (VertexSet s : sets) {
      long val = 0;
      for (Vertex v : members(s)) val += a[v];
      beta = std::max(beta, val);
    }
    if (3 * beta <= total) ++violations;
  }
  return violations;
}

CgWitness verify_cg_lower_witness(int d, int samples, unsigned seed) {
  if (d < 1 || d > 12) throw std::invalid_argument("witness check supports 1 <= d <= 12");
  CgWitness w;
  w.d = d;
  const mpz_class top = mpz_class(1) << (2 * d + 1);
  const mpz_class num = top + 7;
  w.k_integral = mpz_divisible_ui_p(num.get_mpz_t(), 3) != 0;
  if (!w.k_integral) w.failures.push_back("(2^{2d+1}+7)/3 is not an integer");
  w.k = mpz_class(num / 3).get_si();

  bool telescoping = true;
  Rational partial = ratio(1, 2);
  for (int i = 1; i <= d; ++i) {
    const Rational m = pow2(2 * i + 1);
    const Rational x = (m + 1) / (3 * m);
    partial -= 1 / m;
    if (partial != x) telescoping = false;
    w.points.push_back(x);
  }
  w.telescoping = telescoping;
  if (!telescoping) w.failures.push_back("x^(i) does not match 1/2 - sum 1/m_t");

  const Rational& xd = w.points.back();
  const Rational b_size = 3 * Rational(w.k) - 4;
  w.violation = xd * b_size > Rational(w.k) - 1;
  if (!w.violation) w.failures.push_back("x^(d) satisfies the B_{j,j'} facet");
  // (k-1)/(3k-4) = (2^{2d+1}+4)/(3 2^{2d+1}+9), strictly below x^(d)
  const Rational ratio_b = (Rational(w.k) - 1) / b_size;
  if (ratio_b != Rational(top + 4) / Rational(3 * top + 9)) w.failures.push_back("(k-1)/(3k-4) closed form");
  if (ratio_b >= xd) w.failures.push_back("(k-1)/(3k-4) >= x^(d)");

  bool threshold = true;
  for (int i = 1; i <= d; ++i) {
    const long m = 1L << (2 * i + 1);
    const Rational target = ratio(m + 1, 3 * m);
    for (long s = 1; s < m; ++s) {
      if (ratio(s / 3 + 1, s) < target) {
        threshold = false;
        break;
      }
    }
  }
  w.threshold = threshold;
  if (!threshold) w.failures.push_back("integer threshold step fails");

  const auto bounds = cg_rank_bounds(static_cast<int>(w.k));
  if (certainly_less(bounds.lower, Interval(static_cast<long>(d + 1))) != Tri::yes)
    w.failures.push_back("rank bound d+1 does not exceed log_4((3k-7)/2)");

  if (w.k <= 9) {
    w.samples = samples;
    w.sampled_valid_inequalities = sampled_cut_check(static_cast<int>(w.k), samples, seed) == 0;
    if (!*w.sampled_valid_inequalities) w.failures.push_back("sampled valid inequality with beta/a^T e <= 1/3");
  }
  return w;
}

namespace {

using Triples = std::vector<int>;

LinearInequality zero_ineq(int k) { return {RationalVector(3 * k, Rational(0)), Rational(0)}; }

void add_triple(LinearInequality& q, int l, const Rational& coef) {
  for (int p = 0; p < 3; ++p) q.coeffs[hk_index(l, p)] += coef;
}

// x_{m_0} + x_{m'_2} + sum over T of the triple at most 2^{d-1}
LinearInequality premise(int k, int m, int m_prime, const Triples& t, const Rational& rhs) {
  LinearInequality q = zero_ineq(k);
  q.coeffs[hk_index(m, 0)] += 1;
  q.coeffs[hk_index(m_prime, 2)] += 1;
  for (int l : t) add_triple(q, l, 1);
  q.rhs = rhs;
  return q;
}

LinearInequality edge(int k, Vertex u, Vertex v) {
  LinearInequality q = zero_ineq(k);
  q.coeffs[u] = 1;
  q.coeffs[v] = 1;
  q.rhs = 1;
  return q;
}

LinearInequality plus(const LinearInequality& x, const LinearInequality& y, const Rational& s = 1) {
  LinearInequality out = x;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += s * y.coeffs[i];
  out.rhs += s * y.rhs;
  return out;
}

void for_each_subset(const Triples& pool, int size, const std::function<void(const Triples&)>& f) {
  Triples cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == size) {
      f(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

Rational binomial(long n, long r) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Rational(out);
}

}  // namespace

CgDerivation run_cg_upper_derivation(int d, int materialize_up_to) {
  if (d < 2 || d > 12) throw std::invalid_argument("upper derivation supports 2 <= d <= 12");
  CgDerivation der;
  der.d = d;
  const int k = (1 << d) + 1;
  der.k = k;
  const int j = der.j;
  const int jp = der.j_prime;
  Triples others;
  for (int l = 1; l <= k; ++l) {
    if (l != j && l != jp) others.push_back(l);
  }
  const int half = 1 << (d - 1);
  const int small = half - 1;
  const int large = half + 1;
  const Rational rhs_premise(half);
  der.materialized = k <= materialize_up_to;
  std::vector<LinearInequality> to_validate;

  // averaged form of the premise over all T of size `small`
  LinearInequality avg_premise = zero_ineq(k);
  avg_premise.coeffs[hk_index(j, 0)] = 1;
  avg_premise.coeffs[hk_index(jp, 2)] = 1;
  avg_premise.rhs = rhs_premise;
  const Rational share_premise = binomial(k - 3, small - 1) / binomial(k - 2, small);
  for (int l : others) add_triple(avg_premise, l, share_premise);
  if (share_premise != ratio(small, k - 2)) der.failures.push_back("averaging share for the premise is not |T|/(k-2)");

  Triples first_t(others.begin(), others.begin() + small);
  LinearInequality first_premise = premise(k, j, jp, first_t, rhs_premise);
  der.steps.push_back({"premise", "premise", first_premise, "|T| = " + std::to_string(small) + ", valid at depth d-1"});
  to_validate.push_back(first_premise);

  if (der.materialized) {
    LinearInequality sum = zero_ineq(k);
    long count = 0;
    for_each_subset(others, small, [&](const Triples& t) {
      const auto q = premise(k, j, jp, t, rhs_premise);
      to_validate.push_back(q);
      sum = plus(sum, q);
      ++count;
    });
    LinearInequality mean{scale(ratio(1, count), sum.coeffs), sum.rhs / count};
    if (mean != avg_premise) der.failures.push_back("explicit average over T differs from the symbolic one");
  }
  der.steps.push_back({"average premise over T", "average", avg_premise, "coefficient " + to_string(share_premise)});

  // premise on a pair inside a larger T plus two edges
  Triples big_t(others.begin(), others.begin() + large);
  auto with_edges = [&](const Triples& t) {
    const int m = t[0];
    const int mp = t[1];
    Triples rest(t.begin() + 2, t.end());
    const auto base = premise(k, m, mp, rest, rhs_premise);
    const auto e1 = edge(k, hk_index(m, 1), hk_index(m, 2));
    const auto e2 = edge(k, hk_index(mp, 0), hk_index(mp, 1));
    return std::array<LinearInequality, 4>{base, e1, e2, plus(plus(base, e1), e2)};
  };
  {
    const auto parts = with_edges(big_t);
    der.steps.push_back({"premise on the pair inside T", "premise", parts[0], "pair (" + std::to_string(big_t[0]) + ", " +
                                                                                std::to_string(big_t[1]) + ")"});
    der.steps.push_back({"edge inequality", "premise", parts[1], ""});
    der.steps.push_back({"edge inequality", "premise", parts[2], ""});
    LinearInequality expect = zero_ineq(k);
    for (int l : big_t) add_triple(expect, l, 1);
    expect.rhs = half + 2;
    if (parts[3] != expect) der.failures.push_back("premise plus edges is not the sum over T of the triples");
    der.steps.push_back({"sum over T", "sum", parts[3], "|T| = " + std::to_string(large)});
    for (int i = 0; i < 4; ++i) to_validate.push_back(parts[i]);
  }

  LinearInequality avg_sum = zero_ineq(k);
  avg_sum.rhs = half + 2;
  const Rational share_sum = binomial(k - 3, large - 1) / binomial(k - 2, large);
  for (int l : others) add_triple(avg_sum, l, share_sum);
  if (share_sum != ratio(large, k - 2)) der.failures.push_back("averaging share for the sum is not |T|/(k-2)");
  if (der.materialized) {
    LinearInequality sum = zero_ineq(k);
    long count = 0;
    for_each_subset(others, large, [&](const Triples& t) {
      const auto parts = with_edges(t);
      to_validate.push_back(parts[3]);
      sum = plus(sum, parts[3]);
      ++count;
    });
    LinearInequality mean{scale(ratio(1, count), sum.coeffs), sum.rhs / count};
    if (mean != avg_sum) der.failures.push_back("explicit average of the sums differs from the symbolic one");
  }
  der.steps.push_back({"average sum over T", "average", avg_sum, "coefficient " + to_string(share_sum)});

  const Rational lambda = ratio(k - half - 1, half + 1);
  const LinearInequality combined = plus(avg_premise, avg_sum, lambda);
  der.steps.push_back({"combine", "combine", combined, "multiplier " + to_string(lambda)});
  der.final_rhs = combined.rhs;
  der.lhs_matches_b = combined.coeffs == b_inequality(k, j, jp).coeffs;
  if (!der.lhs_matches_b) der.failures.push_back("combined left-hand side is not the B_{j,j'} sum");
  const Rational tail = ratio(k, half + 1);
  der.rhs_simplifies = combined.rhs == Rational(k - 2) + tail && tail > 1 && tail < 2;
  if (!der.rhs_simplifies) der.failures.push_back("right-hand side does not simplify to k-2+k/(2^{d-1}+1)");

  der.floored_rhs = floor(combined.rhs);
  LinearInequality cut = combined;
  cut.rhs = der.floored_rhs;
  const bool integral =
      std::all_of(cut.coeffs.begin(), cut.coeffs.end(), [](const Rational& q) { return q.get_den() == 1; });
  if (!integral) der.failures.push_back("floored inequality has non-integral coefficients");
  if (der.floored_rhs != k - 1) der.failures.push_back("floor of the right-hand side is not k-1");
  der.steps.push_back({"round down", "floor", cut, "floor(" + to_string(combined.rhs) + ") = " + to_string(cut.rhs)});

  if (k <= 11) {
    const Graph g = build_hk(k);
    for (const auto& s : der.steps) to_validate.push_back(s.inequality);
    bool all_valid = true;
    const auto sets = enumerate_stable_sets(g).sets;
    for (const auto& q : to_validate) {
      for (VertexSet s : sets) {
        Rational val = 0;
        for (Vertex v : members(s)) val += q.coeffs[v];
        if (val > q.rhs) {
          all_valid = false;
          break;
        }
      }
      if (!all_valid) break;
    }
    der.steps_valid_by_enumeration = all_valid;
    if (!all_valid) der.failures.push_back("an intermediate inequality is not valid for STAB(H_k)");
  }
  return der;
}

bool three_set_cover(int k, int j) {
  if (k < 2 || k > 8) throw std::invalid_argument("identity check supports 2 <= k <= 8");
  if (j < 1 || j > k) throw std::invalid_argument("j outside [k]");
  const Graph g = build_hk(k);
  std::vector<Vertex> s0, s1, s2;
  for (int i = 1; i <= k; ++i) {
    if (i != j) {
      s0.push_back(hk_index(i, 0));
      s1.push_back(hk_index(i, 1));
      s2.push_back(hk_index(i, 2));
    }
  }
  s0.push_back(hk_index(j, 1));
  s1.push_back(hk_index(j, 0));
  s1.push_back(hk_index(j, 2));
  s2.push_back(hk_index(j, 1));
  const VertexSet a = to_vertex_set(s0);
  const VertexSet b = to_vertex_set(s1);
  const VertexSet c = to_vertex_set(s2);
  if (!is_stable(g, a) || !is_stable(g, b) || !is_stable(g, c)) return false;
  const std::size_t n = g.order();
  RationalVector lhs = add(add(incidence(a, n), incidence(b, n)), incidence(c, n));
  RationalVector rhs(n, Rational(1));
  rhs[hk_index(j, 1)] += 1;
  return lhs == rhs;
}

nlohmann::json to_json(const CgWitness& w) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& x : w.points) pts.push_back(to_string(x));
  nlohmann::json out = {{"d", w.d},
                        {"k", w.k},
                        {"points", pts},
                        {"k_integral", w.k_integral},
                        {"violation", w.violation},
                        {"threshold", w.threshold},
                        {"telescoping", w.telescoping},
                        {"ok", w.ok()},
                        {"failures", w.failures}};
  if (w.sampled_valid_inequalities) {
    out["valid_inequality_check"] = {{"kind", "sampled"}, {"samples", w.samples}, {"ok", *w.sampled_valid_inequalities}};
  }
  return out;
}

nlohmann::json to_json(const CgDerivation& der) {
  const Graph g = build_hk(der.k);
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : der.steps) {
    steps.push_back({{"name", s.name}, {"kind", s.kind}, {"note", s.note}, {"inequality", to_json(g, s.inequality)}});
  }
  nlohmann::json out = {{"d", der.d},
                        {"k", der.k},
                        {"j", der.j},
                        {"j_prime", der.j_prime},
                        {"steps", steps},
                        {"final_rhs", to_string(der.final_rhs)},
                        {"floored_rhs", to_string(der.floored_rhs)},
                        {"lhs_matches_b", der.lhs_matches_b},
                        {"rhs_simplifies", der.rhs_simplifies},
                        {"materialized", der.materialized},
                        {"ok", der.ok()},
                        {"failures", der.failures}};
  if (der.steps_valid_by_enumeration) out["steps_valid_by_enumeration"] = *der.steps_valid_by_enumeration;
  return out;
}

}  // namespace hkrank
