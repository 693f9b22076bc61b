#include "hkrank/shadow.hpp"

#include "hkrank/graph.hpp"
#include "hkrank/polytopes.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hkrank {

RationalVector expand(int k, const Rational& a, const Rational& b) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  RationalVector x(3 * k);
  for (int i = 1; i <= k; ++i) {
    x[hk_index(i, 0)] = a;
    x[hk_index(i, 1)] = b;
    x[hk_index(i, 2)] = a;
  }
  return x;
}

ShadowPolygon phi_frac(int k) {
  if (k < 2) throw std::invalid_argument("H_k requires k >= 2");
  return {{0, 0}, {ratio(1, 2), 0}, {ratio(1, 2), ratio(1, 2)}, {0, 1}};
}

ShadowPolygon phi_stab(int k) {
  if (k < 2) throw std::invalid_argument("H_k requires k >= 2");
  return {{0, 0}, {ratio(1, 2), 0}, {ratio(1, k), ratio(k - 1, k)}, {0, 1}};
}

namespace {

// > 0 for a left turn o -> a -> b
Rational cross(const ShadowPoint& o, const ShadowPoint& a, const ShadowPoint& b) {
  return (a.a - o.a) * (b.b - o.b) - (a.b - o.b) * (b.a - o.a);
}

}  // namespace

ShadowPolygon convex_hull(std::vector<ShadowPoint> points) {
  std::sort(points.begin(), points.end(), [](const ShadowPoint& p, const ShadowPoint& q) {
    return p.a < q.a || (p.a == q.a && p.b < q.b);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  ShadowPolygon hull(2 * points.size());
  std::size_t m = 0;
  for (const auto& p : points) {
    while (m >= 2 && cross(hull[m - 2], hull[m - 1], p) <= 0) --m;
    hull[m++] = p;
  }
  const std::size_t lower = m + 1;
  for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {
    while (m >= lower && cross(hull[m - 2], hull[m - 1], *it) <= 0) --m;
    hull[m++] = *it;
  }
  hull.resize(m - 1);
  return hull;
}

bool polygon_contains(const ShadowPolygon& poly, const ShadowPoint& pt) {
  if (poly.empty()) return false;
  if (poly.size() == 1) return poly[0] == pt;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    if (cross(p, q, pt) < 0) return false;
  }
  return true;
}

bool polygon_subset(const ShadowPolygon& inner, const ShadowPolygon& outer) {
  return std::all_of(inner.begin(), inner.end(), [&](const ShadowPoint& p) { return polygon_contains(outer, p); });
}

ShadowPolygon project_stab_shadow(int k) {
  const Graph g = build_hk(k);
  VertexSet outer = 0;
  VertexSet middle = 0;
  for (int i = 1; i <= k; ++i) {
    outer |= VertexSet{1} << hk_index(i, 0);
    outer |= VertexSet{1} << hk_index(i, 2);
    middle |= VertexSet{1} << hk_index(i, 1);
  }
  // Averaging over the rotation-reflection family replaces x by its block means.
  std::set<std::pair<int, int>> counts;
  for_each_stable_set(g, [&](VertexSet s) { counts.emplace(std::popcount(s & outer), std::popcount(s & middle)); });
  std::vector<ShadowPoint> pts;
  for (auto [o, m] : counts) pts.push_back({ratio(o, 2 * k), ratio(m, k)});
  return convex_hull(std::move(pts));
}

ParabolaParams parabola_params(int k, mpfr_prec_t prec) {
  if (k < 2) throw std::invalid_argument("parabola requires k >= 2");
  Interval s = sqrt(Interval(ratio(k, 2 * k - 2), prec));
  return {k, Interval(1L, prec) - s, Interval(1L, prec) + s};
}

Interval p_k_eval(int k, const Interval& x, const Interval& y, bool bar) {
  const mpfr_prec_t prec = std::max(x.precision(), y.precision());
  const ParabolaParams pp = parabola_params(k, prec);
  const Interval& q = bar ? pp.q_bar : pp.q;
  // y^2 - y and 2x^2 - x written to keep the dependency on one occurrence where possible
  const Interval two(2L, prec);
  const Interval four(4L, prec);
  Interval xx = x * (two * x - Interval(1L, prec));
  Interval yy = y * (y - Interval(1L, prec));
  return xx + two * square(q) * yy + four * q * x * y;
}

Interval p_k_eval(int k, const Rational& x, const Rational& y, bool bar) {
  return p_k_eval(k, Interval(x), Interval(y), bar);
}

SurdForm p_k_surd(int k, const Rational& x, const Rational& y) {
  if (k < 2) throw std::invalid_argument("parabola requires k >= 2");
  const Rational r = ratio(k, 2 * k - 2);
  const Rational yy = y * y - y;
  SurdForm f;
  f.radicand = r;
  f.rational_part = 2 * x * x - x + 2 * (1 + r) * yy + 4 * x * y;
  f.surd_part = -4 * yy - 4 * x * y;
  return f;
}

int surd_sign(const SurdForm& f) {
  const int sp = sgn(f.rational_part);
  const int sq = sgn(f.surd_part);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // opposite signs: compare P^2 with r Q^2
  const int cmp_sq = sgn(f.rational_part * f.rational_part - f.radicand * f.surd_part * f.surd_part);
  return sp > 0 ? cmp_sq : -cmp_sq;
}

bool region_c_member(int k, const Rational& x, const Rational& y) {
  if (k < 3) throw std::invalid_argument("region C requires k >= 3");
  if (x < 0 || y < 0 || x + y > 1) return false;
  return surd_sign(p_k_surd(k, x, y)) <= 0;
}

namespace {

Tri all_hold(std::initializer_list<Tri> parts) {
  bool undecided = false;
  for (Tri t : parts) {
    if (t == Tri::no) return Tri::no;
    if (t == Tri::undecided) undecided = true;
  }
  return undecided ? Tri::undecided : Tri::yes;
}

}  // namespace

Tri region_c_member(int k, const Interval& x, const Interval& y) {
  if (k < 3) throw std::invalid_argument("region C requires k >= 3");
  const mpfr_prec_t prec = x.precision();
  const Interval zero(0L, prec);
  return all_hold({certainly_less_equal(p_k_eval(k, x, y), zero), certainly_less_equal(x + y, Interval(1L, prec)),
                 certainly_less_equal(zero, x), certainly_less_equal(zero, y)});
}

Rational slope(int k, const Rational& a, const Rational& b) {
  if (k < 2) throw std::invalid_argument("slope requires k >= 2");
  const Rational run = ratio(1, k) - a;
  if (run == 0) throw std::domain_error("slope undefined at a = 1/k");
  return (ratio(k - 1, k) - b) / run;
}

Interval tangent_slope_at_apex(int k, mpfr_prec_t prec) {
  if (k < 3) throw std::invalid_argument("apex slope requires k >= 3");
  const Interval kk(static_cast<long>(k), prec);
  const Interval km1(static_cast<long>(k - 1), prec);
  const Interval root = sqrt(Interval(ratio(2 * k, k - 1), prec));
  const Interval denom = Interval(3L, prec) * kk * kk - Interval(2L, prec) * km1 * km1 * root - Interval(4L, prec) * kk;
  return Interval(-1L, prec) - kk / denom;
}

Interval implicit_slope_at_apex(int k, mpfr_prec_t prec) {
  if (k < 3) throw std::invalid_argument("apex slope requires k >= 3");
  const Interval q = parabola_params(k, prec).q;
  const Interval x(ratio(1, k), prec);
  const Interval y(ratio(k - 1, k), prec);
  const Interval four(4L, prec);
  const Interval num = Interval(1L, prec) - four * x - four * q * y;
  const Interval den = four * square(q) * y - Interval(2L, prec) * square(q) + four * q * x;
  return num / den;
}

Interval boundary_y(int k, const Rational& x, mpfr_prec_t prec) {
  if (k < 3) throw std::invalid_argument("boundary requires k >= 3");
  if (x < ratio(1, k) || x > ratio(1, 2)) throw std::domain_error("boundary sampled only for 1/k <= x <= 1/2");
  const Interval q = parabola_params(k, prec).q;
  const Interval xi(x, prec);
  const Interval two(2L, prec);
  const Interval a2 = two * square(q);
  const Interval b1 = Interval(4L, prec) * q * xi - a2;
  const Interval c0 = xi * (two * xi - Interval(1L, prec));
  Interval disc = square(b1) - Interval(4L, prec) * a2 * c0;
  if (disc.upper() < 0) throw std::domain_error("no real boundary point");
  if (disc.lower() < 0) disc = Interval(Rational(0), disc.upper(), prec);
  return (sqrt(disc) - b1) / (two * a2);
}

std::vector<ShadowSample> shadow_samples(int k, int samples) {
  if (k < 3) throw std::invalid_argument("shadow output requires k >= 3");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::vector<ShadowSample> out;
  const Rational x0 = ratio(1, k);
  const Rational step = (ratio(1, 2) - x0) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const Rational x = x0 + step * i;
    out.push_back({to_double(x), std::max(0.0, boundary_y(k, x).mid_double()), "boundary"});
  }
  for (const auto& v : phi_stab(k)) out.push_back({to_double(v.a), to_double(v.b), "phi_stab"});
  return out;
}

void emit_shadow(int k, ShadowFormat format, std::ostream& out, int samples) {
  const auto pts = shadow_samples(k, samples);
  std::ostringstream buf;
  buf << std::setprecision(12);
  if (format == ShadowFormat::csv) {
    buf << "x,y,curve\n";
    for (const auto& p : pts) buf << p.x << ',' << p.y << ',' << p.curve << '\n';
    out << buf.str();
    return;
  }
  auto sx = [](double x) { return x / 0.6 * 600.0; };
  auto sy = [](double y) { return 600.0 - y * 600.0; };
  buf << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">\n";
  buf << "<line x1=\"0\" y1=\"600\" x2=\"600\" y2=\"600\" stroke=\"black\"/>\n";
  buf << "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"600\" stroke=\"black\"/>\n";
  // region C: (0,0) -> (1/2,0) -> boundary back to the apex -> (0,1)
  buf << "<path id=\"region_c\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"#3182bd\" d=\"M " << sx(0) << ' ' << sy(0);
  std::vector<ShadowSample> boundary;
  for (const auto& p : pts) {
    if (p.curve == "boundary") boundary.push_back(p);
  }
  for (auto it = boundary.rbegin(); it != boundary.rend(); ++it) buf << " L " << sx(it->x) << ' ' << sy(it->y);
  buf << " L " << sx(0) << ' ' << sy(1) << " Z\"/>\n";
  buf << "<polygon id=\"phi_stab\" fill=\"none\" stroke=\"#de2d26\" points=\"";
  bool first = true;
  for (const auto& p : pts) {
    if (p.curve != "phi_stab") continue;
    buf << (first ? "" : " ") << sx(p.x) << ',' << sy(p.y);
    first = false;
  }
  buf << "\"/>\n</svg>\n";
  out << buf.str();
}

}  // namespace hkrank
