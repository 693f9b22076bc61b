#ifndef HKRANK_SHADOW_HPP
#define HKRANK_SHADOW_HPP

#include "hkrank/interval.hpp"
#include "hkrank/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hkrank {

struct ShadowPoint {
  Rational a;
  Rational b;
  friend bool operator==(const ShadowPoint&, const ShadowPoint&) = default;
};

/// Convex polygon, vertices counter-clockwise starting at the lexicographically smallest one.
using ShadowPolygon = std::vector<ShadowPoint>;

/// w_k(a, b): a on [k]_0 u [k]_2, b on [k]_1, in H_k vertex order.
RationalVector expand(int k, const Rational& a, const Rational& b);

ShadowPolygon phi_frac(int k);
ShadowPolygon phi_stab(int k);

/// Exact monotone-chain hull; collinear boundary points are dropped.
ShadowPolygon convex_hull(std::vector<ShadowPoint> points);
/// Closed containment.
bool polygon_contains(const ShadowPolygon& poly, const ShadowPoint& pt);
bool polygon_subset(const ShadowPolygon& inner, const ShadowPolygon& outer);

/// Hull of the symmetrized incidence vectors of all stable sets of H_k.
ShadowPolygon project_stab_shadow(int k);

struct ParabolaParams {
  int k = 0;
  Interval q;      // 1 - sqrt(k/(2k-2))
  Interval q_bar;  // 1 + sqrt(k/(2k-2))
};

/// Requires k >= 2.
ParabolaParams parabola_params(int k, mpfr_prec_t prec = default_precision());

/// (2x^2 - x) + 2 q^2 (y^2 - y) + 4 q x y with q = q_k (or q_bar when bar is set).
Interval p_k_eval(int k, const Interval& x, const Interval& y, bool bar = false);
Interval p_k_eval(int k, const Rational& x, const Rational& y, bool bar = false);

/// With r = k/(2k-2) and s = sqrt(r), p_k = P + Q s and p_bar_k = P - Q s exactly.
struct SurdForm {
  Rational rational_part;
  Rational surd_part;
  Rational radicand;
};
SurdForm p_k_surd(int k, const Rational& x, const Rational& y);
/// Exact sign of P + Q sqrt(r): -1, 0 or 1.
int surd_sign(const SurdForm& f);

/// Exact for rational input: p_k <= 0, x + y <= 1, x >= 0, y >= 0. Requires k >= 3.
bool region_c_member(int k, const Rational& x, const Rational& y);
/// Enclosure version; undecided when an enclosure straddles a constraint boundary.
Tri region_c_member(int k, const Interval& x, const Interval& y);

/// ((k-1)/k - b) / (1/k - a). Throws std::domain_error at a = 1/k.
Rational slope(int k, const Rational& a, const Rational& b);

/// -1 - k / (3k^2 - 2(k-1)^2 sqrt(2k/(k-1)) - 4k). Requires k >= 3.
Interval tangent_slope_at_apex(int k, mpfr_prec_t prec = default_precision());
/// -p_x / p_y at (1/k, (k-1)/k): (1 - 4x - 4qy) / (4q^2 y - 2q^2 + 4qx).
Interval implicit_slope_at_apex(int k, mpfr_prec_t prec = default_precision());

/// y on the boundary p_k = 0 above x, for 1/k <= x <= 1/2 (the larger root).
Interval boundary_y(int k, const Rational& x, mpfr_prec_t prec = default_precision());

enum class ShadowFormat { csv, svg };

struct ShadowSample {
  double x;
  double y;
  std::string curve;
};

inline constexpr int kShadowSamples = 256;

/// Boundary samples of p_k = 0 from the apex to (1/2, 0), followed by the phi_stab vertices.
std::vector<ShadowSample> shadow_samples(int k, int samples = kShadowSamples);
void emit_shadow(int k, ShadowFormat format, std::ostream& out, int samples = kShadowSamples);

}  // namespace hkrank

#endif
