#include "hkrank/repro.hpp"

#include "hkrank/certificates.hpp"
#include "hkrank/cg.hpp"
#include "hkrank/eigen.hpp"
#include "hkrank/graph.hpp"
#include "hkrank/polytopes.hpp"
#include "hkrank/rankbound.hpp"
#include "hkrank/shadow.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hkrank {

namespace {

struct Tally {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (!ok) detail << "; ";
    else detail.str("");
    ok = false;
    detail << what;
  }
};

CriterionResult finish(int id, Tally& t, const std::string& summary) {
  CriterionResult r;
  r.id = id;
  r.pass = t.ok;
  r.detail = t.ok ? summary : t.detail.str();
  return r;
}

CriterionResult example_h7_certificate(const ReproOptions&) {
  Tally t;
  const CertificateParams params{7, parse_rational("0.1553"), parse_rational("0.8278"), parse_rational("0.005428"),
                                 parse_rational("0.6665")};
  const auto res = verify_recursive(2, params, closed_form_resolver());
  if (!res.ok) {
    for (const auto& f : res.failures) t.fail(f);
  }
  const Rational lhs = 2 * (params.k - 1) * params.a + (params.k - 2) * params.b;
  if (lhs != parse_rational("6.0026")) t.fail("2(k-1)a+(k-2)b = " + to_string(lhs));
  if (!(lhs > params.k - 1)) t.fail("point does not violate the symmetric facet");
  if (!violates_symmetric_facet(params)) t.fail("violates_symmetric_facet is false");
  return finish(1, t, "depth-2 certificate verified, 2(k-1)a+(k-2)b = 30013/5000 > 6, r+(H_7) >= 3");
}

CriterionResult example_slope_sequences(const ReproOptions&) {
  Tally t;
  constexpr double kMinMargin = 1e-9;
  const struct {
    int k;
    int p;
    const char* last;
  } cases[] = {{7, 2, "-2.39"}, {10, 3, "-2.24"}};
  std::ostringstream summary;
  for (const auto& c : cases) {
    const auto seq = make_sequence(c.k, c.p, parse_rational(c.last));
    const auto rep = verify_sequence(seq, kMinMargin);
    if (!rep.ok) {
      for (const auto& f : rep.failures) t.fail("k=" + std::to_string(c.k) + ": " + f);
    } else if (rep.bound != c.p + 1) {
      t.fail("k=" + std::to_string(c.k) + ": bound " + std::to_string(rep.bound));
    }
    double margin = INFINITY;
    for (const auto& chk : rep.checks) {
      if (chk.strict) margin = std::min(margin, chk.margin);
    }
    summary << "k=" << c.k << " bound " << rep.bound << " (min margin " << margin << ") ";
  }
  return finish(2, t, summary.str());
}

CriterionResult greedy_sweep(const ReproOptions& opts) {
  Tally t;
  const int kmax = opts.long_mode ? 10000 : 2000;
  const ThresholdTable table(kmax);
  std::vector<int> bounds(kmax + 1, 0);
  parallel_for(10, kmax, opts.threads, [&](int k) {
    const auto g = greedy_search(k, kDefaultEps, &table);
    bounds[k] = g ? g->report.bound : 0;
  });
  int low_a = 0, low_b = 0;
  for (int k = 10; k <= kmax; ++k) {
    const bool in_a = k <= 500 || opts.long_mode;
    if (in_a && bounds[k] < analytic_lower_bound(k)) {
      if (low_a++ < 5) t.fail("k=" + std::to_string(k) + ": bound " + std::to_string(bounds[k]) + " below analytic");
    }
    if (k >= 50 && k <= 2000 && 4 * bounds[k] <= k) {
      if (low_b++ < 5) t.fail("k=" + std::to_string(k) + ": bound " + std::to_string(bounds[k]) + " <= k/4");
    }
  }
  std::ostringstream s;
  s << "bound >= floor(19(k-2)/100)+3 for k=10.." << (opts.long_mode ? kmax : 500) << ", bound > k/4 for k=50..2000"
    << ", bound(500) = " << bounds[500] << ", bound(2000) = " << bounds[2000];
  return finish(3, t, s.str());
}

CriterionResult psd_oracle_agreement(const ReproOptions& opts) {
  Tally t;
  constexpr double kGap = 1e-8;
  constexpr double kEigenTol = 1e-10;
  constexpr int kSamples = 1000;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> coord(-1000000, 1000000);
  std::uniform_int_distribution<int> order(2, 12);
  int accepted = 0, disagreements = 0, psd_count = 0;
  while (accepted < kSamples) {
    CertificateParams params{order(rng), ratio(coord(rng), 1000000), ratio(coord(rng), 1000000),
                             ratio(coord(rng), 1000000), ratio(coord(rng), 1000000)};
    const auto closed = psd_closed_form(params);
    if (std::fabs(to_double(closed.min_value())) < kGap) continue;
    ++accepted;
    const bool oracle = psd_eigen_oracle(to_double(build_wk(params)), kEigenTol);
    psd_count += closed.psd;
    if (oracle != closed.psd) {
      if (disagreements++ < 5) {
        t.fail("k=" + std::to_string(params.k) + " (" + to_string(params.a) + ", " + to_string(params.b) + ", " +
               to_string(params.c) + ", " + to_string(params.d) + ")");
      }
    }
  }
  std::ostringstream s;
  s << kSamples << " samples, " << psd_count << " PSD, 0 disagreements";
  return finish(4, t, s.str());
}

CriterionResult shadow_projection(const ReproOptions&) {
  Tally t;
  for (int k = 2; k <= 7; ++k) {
    if (project_stab_shadow(k) != phi_stab(k)) t.fail("k=" + std::to_string(k) + ": projected hull differs");
  }
  return finish(5, t, "projection equals the quadrilateral for k=2..7");
}

CriterionResult maximal_sets(const ReproOptions&) {
  Tally t;
  for (int k = 2; k <= 8; ++k) {
    const auto c = classify_maximal_stable_sets(k);
    if (!c.ok()) t.fail("k=" + std::to_string(k) + ": " + std::to_string(c.unclassified.size()) + " unclassified");
    if (static_cast<int>(c.class_two.size()) != k) t.fail("k=" + std::to_string(k) + ": class (ii) size");
    if (maximal_stable_sets(build_hk(k)).size() != c.class_one.size() + c.class_two.size())
      t.fail("k=" + std::to_string(k) + ": classes do not cover the maximal sets");
  }
  return finish(6, t, "maximal stable sets partition into the two classes for k=2..8");
}

CriterionResult facets(const ReproOptions&) {
  Tally t;
  for (int k = 2; k <= 6; ++k) {
    const Graph g = build_hk(k);
    for (int j = 1; j <= k; ++j) {
      for (int jp = 1; jp <= k; ++jp) {
        if (j == jp) continue;
        if (!is_facet(g, b_inequality(k, j, jp)))
          t.fail("k=" + std::to_string(k) + ": B(" + std::to_string(j) + "," + std::to_string(jp) + ") not a facet");
      }
    }
  }
  for (int k = 3; k <= 6; ++k) {
    RationalVector sum(3 * k, Rational(0));
    Rational rhs = 0;
    for (int j = 1; j <= k; ++j) {
      for (int jp = 1; jp <= k; ++jp) {
        if (j == jp) continue;
        const auto b = b_inequality(k, j, jp);
        sum = add(sum, b.coeffs);
        rhs += b.rhs;
      }
    }
    const auto sym = symmetric_inequality(k);
    const Rational s = ratio(1, k - 1);
    if (scale(s, sum) != sym.coeffs || s * rhs != sym.rhs) t.fail("k=" + std::to_string(k) + ": symmetric sum");
  }
  return finish(7, t, "every B inequality is a facet for k=2..6; symmetric = (1/(k-1)) sum for k=3..6");
}

CriterionResult structure(const ReproOptions&) {
  Tally t;
  for (int k = 2; k <= 10; ++k) {
    if (alpha(build_hk(k)) != static_cast<std::size_t>(k + 1)) t.fail("alpha(H_" + std::to_string(k) + ")");
  }
  const Graph clebsch = build_lk(build_cycle(4), 4);
  if (alpha(clebsch) != 5) t.fail("alpha(L_4(C_4))");
  for (int k = 3; k <= 6; ++k) {
    if (!is_isomorphic(destroy(build_hk(k), hk_index(1, 1)), build_hk(k - 1)))
      t.fail("H_" + std::to_string(k) + " minus 1_1");
  }
  const Graph petersen = build_petersen();
  for (Vertex v = 0; v < clebsch.order(); ++v) {
    if (!is_isomorphic(destroy(clebsch, v), petersen)) t.fail("L_4(C_4) minus " + clebsch.label(v));
  }
  for (int l = 2; l <= 3; ++l) {
    const Graph lhs = build_lk2(build_qls(l, {1}), build_qls(l, {l}), 4);
    if (!is_isomorphic(lhs, build_qls(l + 2, {1, l + 2}))) t.fail("L_4(Q) for l=" + std::to_string(l));
  }
  return finish(8, t, "alpha, destruction and blow-up isomorphisms confirmed");
}

CriterionResult cg_bounds(const ReproOptions&) {
  Tally t;
  for (int d = 2; d <= 10; ++d) {
    const auto der = run_cg_upper_derivation(d);
    if (!der.ok()) t.fail("upper d=" + std::to_string(d) + ": " + der.failures.front());
    if (der.floored_rhs != der.k - 1) t.fail("upper d=" + std::to_string(d) + ": floor");
    if (d == 2 && der.steps_valid_by_enumeration != std::optional<bool>(true))
      t.fail("k=5 steps not validated by enumeration");
  }
  for (int d = 1; d <= 6; ++d) {
    const auto w = verify_cg_lower_witness(d);
    if (!w.ok()) t.fail("lower d=" + std::to_string(d) + ": " + w.failures.front());
  }
  return finish(9, t, "upper derivation d=2..10, lower witness d=1..6, k=5 steps enumerated");
}

CriterionResult thresholds_and_steps(const ReproOptions& opts) {
  Tally t;
  const int kmax = 10000;
  const ThresholdTable table(kmax);
  std::mutex m;
  std::atomic<int> order_fail{0}, step_fail{0};
  parallel_for(5, kmax, opts.threads, [&](int k) {
    const auto& u = table.at(k);
    const bool ordered = certainly_less(u.u1, u.u2) == Tri::yes && certainly_less(u.u2, u.u3) == Tri::yes &&
                         certainly_less(u.u3, u.u4) == Tri::yes;
    if (!ordered && order_fail++ < 5) {
      std::lock_guard lock(m);
      t.fail("k=" + std::to_string(k) + ": thresholds not ordered");
    }
    if (k > 200) return;
    const Rational lo = u.u1_exact;
    const Rational span = u.u2.lower() - lo;
    const Interval cap(ratio(2, k - 2));
    for (int i = 1; i <= 100; ++i) {
      const Rational l = lo + span * ratio(i, 101);
      if (certainly_less_equal(h_unchecked(k, Interval(l)), cap) != Tri::yes && step_fail++ < 5) {
        std::lock_guard lock(m);
        t.fail("k=" + std::to_string(k) + ": h exceeds 2/(k-2) at " + to_string(l));
      }
    }
  });
  return finish(10, t, "u1<u2<u3<u4 certified for k=5..10000; h <= 2/(k-2) on the grid for k=5..200");
}

CriterionResult discriminant(const ReproOptions& opts) {
  Tally t;
  constexpr double kWidth = 1e-10;
  constexpr int kPoints = 200;
  std::mt19937_64 rng(opts.seed + 11);
  std::uniform_int_distribution<int> order(4, 50);
  std::uniform_int_distribution<long> coord(1, 999999);
  int stated_fail = 0, corrected_fail = 0;
  for (int i = 0; i < kPoints; ++i) {
    const int k = order(rng);
    const Rational aa = ratio(coord(rng), 1000000);
    const Rational bb = ratio(coord(rng), 1000000);
    if (!discriminant_identity_check(k, aa, bb, discriminant_factor_as_stated(k), kWidth).agrees) ++stated_fail;
    if (!discriminant_identity_check(k, aa, bb, discriminant_factor(k), kWidth).agrees) ++corrected_fail;
  }
  if (stated_fail > 0) t.fail(std::to_string(stated_fail) + "/200 points fail with factor 4(k-1)^2");
  if (corrected_fail > 0) t.fail(std::to_string(corrected_fail) + "/200 points fail with factor 4k^2(k-1)^2");
  auto r = finish(11, t, "identity holds on 200 points");
  if (corrected_fail == 0) r.detail += "; 0/200 fail with factor 4k^2(k-1)^2";
  return r;
}

template <class F>
ReproCheck check(int id, std::string name, bool expected_failure, F f) {
  return {id, name, expected_failure, [=](const ReproOptions& o) {
            const auto start = std::chrono::steady_clock::now();
            CriterionResult r;
            try {
              r = f(o);
            } catch (const std::exception& e) {
              r.pass = false;
              r.detail = std::string("exception: ") + e.what();
            }
            r.id = id;
            r.name = name;
            r.expected_failure = expected_failure;
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return r;
          }};
}

}  // namespace

void parallel_for(int first, int last, unsigned threads, const std::function<void(int)>& work) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  std::atomic<int> next{first};
  std::exception_ptr error;
  std::mutex m;
  auto worker = [&] {
    for (int i = next++; i <= last; i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

const std::vector<ReproCheck>& repro_manifest() {
  static const std::vector<ReproCheck> manifest = {
      check(1, "H_7 depth-2 certificate", false, example_h7_certificate),
      check(2, "slope sequences for k=7 and k=10", false, example_slope_sequences),
      check(3, "greedy rank bound sweep", false, greedy_sweep),
      check(4, "closed-form PSD test vs eigenvalue oracle", false, psd_oracle_agreement),
      check(5, "stable set shadow projection", false, shadow_projection),
      check(6, "maximal stable set classification", false, maximal_sets),
      check(7, "facets and the symmetric inequality", false, facets),
      check(8, "independence numbers and isomorphisms", false, structure),
      check(9, "CG rank bounds", false, cg_bounds),
      check(10, "threshold ordering and step bound", false, thresholds_and_steps),
      check(11, "discriminant identity as stated", true, discriminant),
  };
  return manifest;
}

CriterionResult run_criterion(int id, const ReproOptions& opts) {
  for (const auto& c : repro_manifest()) {
    if (c.id == id) return c.run(opts);
  }
  throw std::invalid_argument("no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const ReproOptions& opts) {
  std::vector<CriterionResult> out;
  for (const auto& c : repro_manifest()) out.push_back(c.run(opts));
  return out;
}

bool all_as_expected(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass && !r.expected_failure) return false;
  }
  return true;
}

std::string verdict(const CriterionResult& r) {
  if (r.pass) return "PASS";
  return r.expected_failure ? "FAIL (expected)" : "FAIL";
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id},         {"name", r.name},     {"pass", r.pass}, {"expected_failure", r.expected_failure},
          {"detail", r.detail}, {"seconds", r.seconds}};
}

}  // namespace hkrank
