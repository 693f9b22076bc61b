#ifndef HKRANK_CERTIFICATES_HPP
#define HKRANK_CERTIFICATES_HPP

#include "hkrank/eigen.hpp"
#include "hkrank/interval.hpp"
#include "hkrank/rational.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hkrank {

struct CertificateParams {
  int k = 2;
  Rational a, b, c, d;
  friend bool operator==(const CertificateParams&, const CertificateParams&) = default;
};

/// Order 3k+1, index 0 first, then H_k vertices in their fixed order.
SymmetricMatrix<Rational> build_wk(const CertificateParams& params);
SymmetricMatrix<double> to_double(const SymmetricMatrix<Rational>& m);

struct PsdClosedForm {
  std::array<Rational, 5> s;  // S1..S5
  bool psd = false;
  Rational min_value() const;
};

PsdClosedForm psd_closed_form(const CertificateParams& params);

/// Checks the block decomposition of the Schur complement: the three blocks sum to
/// W-bar - w w^T, are pairwise column-orthogonal, and their 2x2 cores are PSD exactly
/// when S1, S2-S3 and S4-S5 hold.
bool schur_decomposition_check(const CertificateParams& params);

struct Condition {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct FirstLevelReport {
  CertificateParams params;
  std::vector<Condition> conditions;
  bool ok() const;
  std::vector<std::string> failures() const;
};

/// PSD, the six column inequalities, and cone(FRAC) membership of the representative
/// columns (all 3k columns and complements when exhaustive; requires k <= 8 then).
FirstLevelReport verify_first_level(const CertificateParams& params, bool exhaustive = false);

/// c := -a^2 - 2ab - b^2/2 + 3a/2 + b/2 + b(b-1)/(2(k-1)), d := b - a + c.
CertificateParams first_level_params(int k, const Rational& a, const Rational& b);
/// Region C check followed by verify_first_level on first_level_params. Requires k >= 4.
FirstLevelReport first_level_membership(int k, const Rational& a, const Rational& b, bool exhaustive = false);

struct MembershipCertificate {
  CertificateParams params;
  int p = 1;
  std::vector<MembershipCertificate> children;  // empty for p = 1, two otherwise
  friend bool operator==(const MembershipCertificate&, const MembershipCertificate&) = default;
};

struct VerificationResult {
  bool ok = false;
  std::vector<std::string> failures;
  std::optional<MembershipCertificate> certificate;
};

/// Resolves membership of w_k(a,b) at depth p.
using ChildResolver = std::function<VerificationResult(int k, int p, const Rational& a, const Rational& b)>;

/// Depth 1 by the closed-form first-level rule; depth >= 2 is not handled.
ChildResolver closed_form_resolver(bool exhaustive = false);
/// Looks children up in a stored tree by (k, p, a, b); falls back to nothing.
ChildResolver stored_resolver(const MembershipCertificate& tree);

/// The two points whose depth p-1 membership is required at (k-1).
std::array<std::pair<Rational, Rational>, 2> recursive_children(const CertificateParams& params);

/// Recursive rule: (i) PSD, (ii) 2b + 2c - d <= 1, (iii) both children at (k-1, p-1).
/// Every failing condition is reported. Requires p >= 2, k >= 3, b > 0, 1 - a - c > 0.
VerificationResult verify_recursive(int p, const CertificateParams& params, const ChildResolver& resolver);

/// Re-runs every check from the stored tree alone.
VerificationResult replay(const MembershipCertificate& cert);

/// 2(k-1)a + (k-2)b, and whether it exceeds k-1 (w_k(a,b) violates the symmetric facet).
Rational symmetric_facet_value(const CertificateParams& params);
bool violates_symmetric_facet(const CertificateParams& params);

/// Exact column identities used by the recursive rule.
bool column_identity_first(const CertificateParams& params);    // Y e_{1_0}
bool column_identity_middle(const CertificateParams& params);   // Y e_{1_1}
bool column_identity_outer(const CertificateParams& params);    // Y (e_0 - e_{1_0})
bool column_identity_complement(const CertificateParams& params);  // Y (e_0 - e_{1_1})

struct DiscriminantCheck {
  Rational discriminant;  // p1^2 - 4 p0 p2, exact
  Interval product;       // factor * p_k * p_bar_k
  Rational exact_product; // factor * (P^2 - r Q^2), the same product without rounding
  bool agrees = false;    // product encloses the discriminant with width <= tol
};

/// Corrected constant 4 k^2 (k-1)^2.
Rational discriminant_factor(int k);
/// Constant as printed in the statement, 4 (k-1)^2.
Rational discriminant_factor_as_stated(int k);

/// Quadratic in c obtained from S5 with d = b - a + c: returns {p0, p1, p2}.
std::array<Rational, 3> s5_quadratic(int k, const Rational& a, const Rational& b);
DiscriminantCheck discriminant_identity_check(int k, const Rational& a, const Rational& b, const Rational& factor,
                                              double width_tol = 1e-10, mpfr_prec_t prec = default_precision());

nlohmann::json to_json(const MembershipCertificate& cert);
MembershipCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace hkrank

#endif
