#include "hkrank/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace hkrank {

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix<double>& m, int max_sweeps) {
  const std::size_t n = m.order();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double eps = 1e-15 * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(at(i, j)));
    }
    if (off <= eps) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i);
      std::sort(out.begin(), out.end());
      return out;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= eps * 1e-3) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = c * arp - s * arq;
          at(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = at(p, r);
          const double aqr = at(q, r);
          at(p, r) = c * apr - s * aqr;
          at(q, r) = s * apr + c * aqr;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  throw NonConvergence("Jacobi iteration did not converge");
}

bool psd_eigen_oracle(const SymmetricMatrix<double>& m, double tol) {
  if (m.order() == 0) return true;
  return symmetric_eigenvalues(m).front() >= -tol;
}

}  // namespace hkrank
