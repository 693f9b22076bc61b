#include "hkrank/certificates.hpp"

#include "hkrank/graph.hpp"
#include "hkrank/polytopes.hpp"
#include "hkrank/shadow.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hkrank {

namespace {

std::size_t w_index(int i, int p) { return 1 + hk_index(i, p); }

// Pairs (i, p) of a column selection; p = -1 stands for the homogenizing coordinate.
RationalVector column_of(const SymmetricMatrix<Rational>& y, std::size_t j) { return y.column(j); }

RationalVector complement_column(const SymmetricMatrix<Rational>& y, std::size_t j) {
  RationalVector out = y.column(0);
  const RationalVector cj = y.column(j);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= cj[i];
  return out;
}

RationalVector lifted(int k, const std::vector<std::pair<int, int>>& set) {
  RationalVector v(3 * k + 1, Rational(0));
  v[0] = 1;
  for (auto [i, p] : set) v[w_index(i, p)] = 1;
  return v;
}

RationalVector combine(const std::vector<std::pair<Rational, RationalVector>>& terms) {
  RationalVector out(terms.front().second.size(), Rational(0));
  for (const auto& [coef, vec] : terms) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * vec[i];
  }
  return out;
}

std::vector<std::pair<int, int>> layer(int k, int p, int from = 1) {
  std::vector<std::pair<int, int>> out;
  for (int i = from; i <= k; ++i) out.emplace_back(i, p);
  return out;
}

std::string str(const Rational& q) { return to_string(q); }

}  // namespace

SymmetricMatrix<Rational> build_wk(const CertificateParams& prm) {
  const int k = prm.k;
  if (k < 1) throw std::invalid_argument("k must be positive");
  const Rational& a = prm.a;
  const Rational& b = prm.b;
  const Rational& c = prm.c;
  const Rational& d = prm.d;
  const Rational amc = a - c;
  const Rational diag_block[3][3] = {{a, 0, amc}, {0, b, 0}, {amc, 0, a}};
  const Rational off_block[3][3] = {{c, amc, 0}, {amc, d, amc}, {0, amc, c}};
  SymmetricMatrix<Rational> y(3 * k + 1);
  y.set(0, 0, 1);
  for (int i = 1; i <= k; ++i) {
    y.set(0, w_index(i, 0), a);
    y.set(0, w_index(i, 1), b);
    y.set(0, w_index(i, 2), a);
    for (int j = i; j <= k; ++j) {
      const auto& block = i == j ? diag_block : off_block;
      for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) y.set(w_index(i, p), w_index(j, q), block[p][q]);
      }
    }
  }
  return y;
}

SymmetricMatrix<double> to_double(const SymmetricMatrix<Rational>& m) {
  SymmetricMatrix<double> out(m.order(), 0.0);
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = i; j < m.order(); ++j) out.set(i, j, m(i, j).get_d());
  }
  return out;
}

Rational PsdClosedForm::min_value() const { return *std::min_element(s.begin(), s.end()); }

PsdClosedForm psd_closed_form(const CertificateParams& prm) {
  const int k = prm.k;
  const Rational& a = prm.a;
  const Rational& b = prm.b;
  const Rational& c = prm.c;
  const Rational& d = prm.d;
  PsdClosedForm out;
  out.s[0] = c;
  out.s[1] = a - c;
  out.s[2] = (b - d) - (a - c);
  out.s[3] = 2 * a + (k - 2) * c - 2 * k * a * a;
  const Rational second = 2 * b + 2 * (k - 1) * d - 2 * k * b * b;
  const Rational cross = 2 * (k - 1) * (a - c) - 2 * k * a * b;
  out.s[4] = out.s[3] * second - cross * cross;
  out.psd = std::all_of(out.s.begin(), out.s.end(), [](const Rational& v) { return v >= 0; });
  return out;
}

bool schur_decomposition_check(const CertificateParams& prm) {
  const int k = prm.k;
  const std::size_t n = 3 * k;
  const Rational& a = prm.a;
  const Rational& b = prm.b;
  const Rational& c = prm.c;
  const Rational& d = prm.d;
  const Rational s4 = 2 * a + (k - 2) * c - 2 * k * a * a;
  const Rational t = 2 * (k - 1) * (a - c) - 2 * k * a * b;
  const Rational u = 2 * b + 2 * (k - 1) * d - 2 * k * b * b;
  const Rational m1[3][3] = {{c, 0, -c}, {0, 0, 0}, {-c, 0, c}};
  const Rational m2[3][3] = {{a - c, c - a, a - c}, {c - a, b - d, c - a}, {a - c, c - a, a - c}};
  const Rational m3[3][3] = {{s4, t, s4}, {t, u, t}, {s4, t, s4}};

  // W1 = J (x) m1 / 2, W2 = (kI - J) (x) m2 / k, W3 = J (x) m3 / (2k)
  std::vector<SymmetricMatrix<Rational>> parts(3, SymmetricMatrix<Rational>(n));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Rational kron2 = (i == j ? ratio(k - 1, k) : ratio(-1, k));
      for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
          const std::size_t r = 3 * i + p;
          const std::size_t s = 3 * j + q;
          if (r > s) continue;
          parts[0].set(r, s, m1[p][q] / 2);
          parts[1].set(r, s, kron2 * m2[p][q]);
          parts[2].set(r, s, m3[p][q] / (2 * k));
        }
      }
    }
  }
  const auto y = build_wk(prm);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      const Rational schur = y(r + 1, s + 1) - y(0, r + 1) * y(0, s + 1);
      if (parts[0](r, s) + parts[1](r, s) + parts[2](r, s) != schur) return false;
    }
  }
  for (int x = 0; x < 3; ++x) {
    for (int z = x + 1; z < 3; ++z) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
          Rational acc = 0;
          for (std::size_t m = 0; m < n; ++m) acc += parts[x](m, r) * parts[z](m, s);
          if (acc != 0) return false;
        }
      }
    }
  }
  auto psd2 = [](const Rational& p, const Rational& q, const Rational& r) {
    return p >= 0 && r >= 0 && p * r - q * q >= 0;
  };
  const auto cf = psd_closed_form(prm);
  const bool s1 = cf.s[0] >= 0;
  const bool s23 = cf.s[1] >= 0 && cf.s[2] >= 0;
  const bool s45 = cf.s[3] >= 0 && cf.s[4] >= 0;
  if (psd2(c, -c, c) != s1) return false;
  if (psd2(a - c, c - a, b - d) != s23) return false;
  // a 2x2 matrix with nonnegative determinant and one nonnegative diagonal entry
  // has both diagonal entries of the same sign unless the other is zero
  const bool core3 = psd2(s4, t, u);
  if (core3 != s45 && !(s4 == 0 && t == 0)) return false;
  return true;
}

bool FirstLevelReport::ok() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.holds; });
}

std::vector<std::string> FirstLevelReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : conditions) {
    if (!c.holds) out.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
  return out;
}

FirstLevelReport verify_first_level(const CertificateParams& prm, bool exhaustive) {
  const int k = prm.k;
  if (k < 2) throw std::invalid_argument("first-level check requires k >= 2");
  if (exhaustive && k > 8) throw std::invalid_argument("exhaustive column mode supports k <= 8");
  const Rational& a = prm.a;
  const Rational& b = prm.b;
  const Rational& c = prm.c;
  const Rational& d = prm.d;
  FirstLevelReport rep;
  rep.params = prm;

  const auto cf = psd_closed_form(prm);
  std::string psd_detail;
  for (int i = 0; i < 5; ++i) {
    if (cf.s[i] < 0) psd_detail += "S" + std::to_string(i + 1) + " = " + str(cf.s[i]) + " < 0; ";
  }
  rep.conditions.push_back({"PSD", cf.psd, psd_detail});

  auto ineq = [&](const std::string& name, const Rational& lhs, const Rational& rhs) {
    rep.conditions.push_back({name, lhs <= rhs, str(lhs) + " <= " + str(rhs)});
  };
  ineq("2(a-c) <= b", 2 * (a - c), b);
  ineq("a-c+d <= b", a - c + d, b);
  ineq("a+(a-c) <= 1-a", a + (a - c), 1 - a);
  ineq("(b-a+c)+a <= 1-a", (b - a + c) + a, 1 - a);
  ineq("a+c <= 1-b", a + c, 1 - b);
  ineq("c+(b-d) <= 1-b", c + (b - d), 1 - b);

  const Graph g = build_hk(k);
  const auto y = build_wk(prm);
  std::vector<std::size_t> cols;
  if (exhaustive) {
    for (std::size_t j = 1; j <= 3 * static_cast<std::size_t>(k); ++j) cols.push_back(j);
  } else {
    cols = {w_index(1, 0), w_index(1, 1)};
  }
  for (std::size_t j : cols) {
    const std::string label = g.label(j - 1);
    rep.conditions.push_back({"Ye_" + label + " in cone(FRAC)", cone_frac_member(g, column_of(y, j)), ""});
    rep.conditions.push_back(
        {"Y(e_0-e_" + label + ") in cone(FRAC)", cone_frac_member(g, complement_column(y, j)), ""});
  }
  return rep;
}

CertificateParams first_level_params(int k, const Rational& a, const Rational& b) {
  if (k < 2) throw std::invalid_argument("first-level construction requires k >= 2");
  const Rational c = -a * a - 2 * a * b - b * b / 2 + ratio(3, 2) * a + b / 2 + b * (b - 1) / (2 * (k - 1));
  return {k, a, b, c, b - a + c};
}

FirstLevelReport first_level_membership(int k, const Rational& a, const Rational& b, bool exhaustive) {
  if (k < 4) throw std::invalid_argument("first-level membership rule requires k >= 4");
  FirstLevelReport rep = verify_first_level(first_level_params(k, a, b), exhaustive);
  const SurdForm f = p_k_surd(k, a, b);
  const bool in_c = region_c_member(k, a, b);
  rep.conditions.insert(rep.conditions.begin(),
                        {"(a,b) in region C", in_c,
                         "sign p_k = " + std::to_string(surd_sign(f)) + ", a+b = " + str(a + b)});
  return rep;
}

ChildResolver closed_form_resolver(bool exhaustive) {
  return [exhaustive](int k, int p, const Rational& a, const Rational& b) {
    VerificationResult res;
    if (p != 1) {
      res.failures.push_back("closed-form rule resolves depth 1 only (asked for depth " + std::to_string(p) + ")");
      return res;
    }
    if (k < 4) {
      res.failures.push_back("first-level rule requires k >= 4 (got " + std::to_string(k) + ")");
      return res;
    }
    const auto rep = first_level_membership(k, a, b, exhaustive);
    res.ok = rep.ok();
    res.failures = rep.failures();
    if (res.ok) res.certificate = MembershipCertificate{rep.params, 1, {}};
    return res;
  };
}

namespace {

void collect(const MembershipCertificate& node, std::vector<const MembershipCertificate*>& out) {
  for (const auto& child : node.children) {
    out.push_back(&child);
    collect(child, out);
  }
}

}  // namespace

ChildResolver stored_resolver(const MembershipCertificate& tree) {
  std::vector<const MembershipCertificate*> nodes;
  collect(tree, nodes);
  std::vector<MembershipCertificate> copies;
  for (const auto* n : nodes) copies.push_back(*n);
  return [copies](int k, int p, const Rational& a, const Rational& b) {
    for (const auto& node : copies) {
      if (node.params.k == k && node.p == p && node.params.a == a && node.params.b == b) return replay(node);
    }
    VerificationResult res;
    res.failures.push_back("no stored certificate for w_" + std::to_string(k) + "(" + str(a) + ", " + str(b) +
                           ") at depth " + std::to_string(p));
    return res;
  };
}

std::array<std::pair<Rational, Rational>, 2> recursive_children(const CertificateParams& prm) {
  const Rational& a = prm.a;
  const Rational& b = prm.b;
  const Rational& c = prm.c;
  const Rational& d = prm.d;
  if (b == 0) throw std::domain_error("b = 0");
  if (1 - a - c == 0) throw std::domain_error("1 - a - c = 0");
  const Rational den = 1 - a - c;
  return {std::pair{(a - c) / b, d / b}, std::pair{(a - c) / den, (b - a + c) / den}};
}

bool column_identity_first(const CertificateParams& prm) {
  const int k = prm.k;
  auto s1 = layer(k, 1, 2);
  s1.emplace_back(1, 0);
  s1.emplace_back(1, 2);
  const auto rhs = combine({{prm.a - prm.c, lifted(k, s1)}, {prm.c, lifted(k, layer(k, 0))}});
  return build_wk(prm).column(w_index(1, 0)) == rhs;
}

bool column_identity_middle(const CertificateParams& prm) {
  const int k = prm.k;
  RationalVector rhs(3 * k + 1, Rational(0));
  rhs[0] = prm.b;
  rhs[w_index(1, 1)] = prm.b;
  for (int i = 2; i <= k; ++i) {
    rhs[w_index(i, 0)] = prm.a - prm.c;
    rhs[w_index(i, 1)] = prm.d;
    rhs[w_index(i, 2)] = prm.a - prm.c;
  }
  return build_wk(prm).column(w_index(1, 1)) == rhs;
}

bool column_identity_outer(const CertificateParams& prm) {
  const int k = prm.k;
  RationalVector rest(3 * k + 1, Rational(0));
  rest[0] = 1 - prm.a - prm.c;
  rest[w_index(1, 1)] = prm.b;
  for (int i = 2; i <= k; ++i) {
    rest[w_index(i, 0)] = prm.a - prm.c;
    rest[w_index(i, 1)] = prm.b - prm.a + prm.c;
    rest[w_index(i, 2)] = prm.a - prm.c;
  }
  const auto rhs = combine({{prm.c, lifted(k, layer(k, 2))}, {Rational(1), rest}});
  return complement_column(build_wk(prm), w_index(1, 0)) == rhs;
}

bool column_identity_complement(const CertificateParams& prm) {
  const int k = prm.k;
  const Rational& a = prm.a;
  const Rational& b = prm.b;
  const Rational& c = prm.c;
  const Rational& d = prm.d;
  auto s3 = layer(k, 1, 2);
  s3.emplace_back(1, 0);
  s3.emplace_back(1, 2);
  const auto rhs = combine({{c, lifted(k, layer(k, 2))},
                            {c, lifted(k, layer(k, 0))},
                            {a - c, lifted(k, s3)},
                            {b - d - a + c, lifted(k, layer(k, 1, 2))},
                            {1 - 2 * b - 2 * c + d, lifted(k, {})}});
  return complement_column(build_wk(prm), w_index(1, 1)) == rhs;
}

VerificationResult verify_recursive(int p, const CertificateParams& prm, const ChildResolver& resolver) {
  if (p < 2) throw std::invalid_argument("recursive rule requires p >= 2");
  if (prm.k < 3) throw std::invalid_argument("recursive rule requires k >= 3");
  if (prm.b <= 0) throw std::invalid_argument("recursive rule requires b > 0");
  if (1 - prm.a - prm.c <= 0) throw std::invalid_argument("recursive rule requires 1 - a - c > 0");

  VerificationResult res;
  const auto cf = psd_closed_form(prm);
  if (!cf.psd) {
    std::string detail;
    for (int i = 0; i < 5; ++i) {
      if (cf.s[i] < 0) detail += " S" + std::to_string(i + 1) + " = " + str(cf.s[i]);
    }
    res.failures.push_back("(i) W_k(a,b,c,d) is not PSD:" + detail);
  }
  const Rational lhs = 2 * prm.b + 2 * prm.c - prm.d;
  if (lhs > 1) res.failures.push_back("(ii) 2b+2c-d = " + str(lhs) + " > 1");

  if (!column_identity_first(prm) || !column_identity_middle(prm) || !column_identity_outer(prm) ||
      !column_identity_complement(prm))
    res.failures.push_back("column decomposition identity failed");

  MembershipCertificate cert{prm, p, {}};
  const auto kids = recursive_children(prm);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const auto& [ca, cb] = kids[i];
    const auto child = resolver(prm.k - 1, p - 1, ca, cb);
    if (!child.ok || !child.certificate) {
      std::string why;
      for (const auto& f : child.failures) why += "; " + f;
      res.failures.push_back("(iii) child " + std::to_string(i + 1) + " w_" + std::to_string(prm.k - 1) + "(" +
                             str(ca) + ", " + str(cb) + ") not certified at depth " + std::to_string(p - 1) + why);
    } else {
      cert.children.push_back(*child.certificate);
    }
  }
  res.ok = res.failures.empty();
  if (res.ok) res.certificate = std::move(cert);
  return res;
}

VerificationResult replay(const MembershipCertificate& cert) {
  VerificationResult res;
  if (cert.p < 1) {
    res.failures.push_back("depth must be at least 1");
    return res;
  }
  if (cert.p == 1) {
    if (!cert.children.empty()) {
      res.failures.push_back("depth-1 node must not have children");
      return res;
    }
    const auto rep = verify_first_level(cert.params);
    res.ok = rep.ok();
    res.failures = rep.failures();
    if (res.ok) res.certificate = cert;
    return res;
  }
  if (cert.children.size() != 2) {
    res.failures.push_back("depth-" + std::to_string(cert.p) + " node needs two children");
    return res;
  }
  try {
    res = verify_recursive(cert.p, cert.params, stored_resolver(cert));
  } catch (const std::exception& e) {
    res.ok = false;
    res.failures.push_back(std::string("precondition: ") + e.what());
  }
  if (res.ok && *res.certificate != cert) {
    res.ok = false;
    res.failures.push_back("replayed tree differs from the stored tree");
  }
  return res;
}

Rational symmetric_facet_value(const CertificateParams& prm) { return 2 * (prm.k - 1) * prm.a + (prm.k - 2) * prm.b; }

bool violates_symmetric_facet(const CertificateParams& prm) { return symmetric_facet_value(prm) > prm.k - 1; }

Rational discriminant_factor(int k) { return Rational(4) * k * k * (k - 1) * (k - 1); }

Rational discriminant_factor_as_stated(int k) { return Rational(4) * (k - 1) * (k - 1); }

std::array<Rational, 3> s5_quadratic(int k, const Rational& a, const Rational& b) {
  const Rational a0 = 2 * a - 2 * k * a * a;
  const Rational b0 = 2 * b + 2 * (k - 1) * (b - a) - 2 * k * b * b;
  const Rational c0 = 2 * (k - 1) * a - 2 * k * a * b;
  const Rational p2 = Rational(2 * (k - 1) * (k - 2)) - Rational(4) * (k - 1) * (k - 1);
  const Rational p1 = 2 * (k - 1) * a0 + (k - 2) * b0 + 4 * (k - 1) * c0;
  const Rational p0 = a0 * b0 - c0 * c0;
  return {p0, p1, p2};
}

DiscriminantCheck discriminant_identity_check(int k, const Rational& a, const Rational& b, const Rational& factor,
                                              double width_tol, mpfr_prec_t prec) {
  if (k < 3) throw std::invalid_argument("discriminant identity requires k >= 3");
  const auto [p0, p1, p2] = s5_quadratic(k, a, b);
  DiscriminantCheck out;
  out.discriminant = p1 * p1 - 4 * p0 * p2;
  const Interval pk = p_k_eval(k, Interval(a, prec), Interval(b, prec));
  const Interval pkb = p_k_eval(k, Interval(a, prec), Interval(b, prec), true);
  out.product = Interval(factor, prec) * pk * pkb;
  const SurdForm f = p_k_surd(k, a, b);
  out.exact_product = factor * (f.rational_part * f.rational_part - f.radicand * f.surd_part * f.surd_part);
  out.agrees = out.product.contains(out.discriminant) && out.product.width() <= Rational(width_tol);
  return out;
}

nlohmann::json to_json(const MembershipCertificate& cert) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : cert.children) children.push_back(to_json(c));
  return {{"k", cert.params.k},
          {"p", cert.p},
          {"params", {str(cert.params.a), str(cert.params.b), str(cert.params.c), str(cert.params.d)}},
          {"children", children}};
}

MembershipCertificate certificate_from_json(const nlohmann::json& j) {
  MembershipCertificate cert;
  cert.params.k = j.at("k").get<int>();
  cert.p = j.at("p").get<int>();
  const auto& params = j.at("params");
  if (!params.is_array() || params.size() != 4) throw std::invalid_argument("params must list a, b, c, d");
  auto read = [](const nlohmann::json& v) {
    return v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump());
  };
  cert.params.a = read(params[0]);
  cert.params.b = read(params[1]);
  cert.params.c = read(params[2]);
  cert.params.d = read(params[3]);
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) cert.children.push_back(certificate_from_json(c));
  }
  return cert;
}

}  // namespace hkrank
