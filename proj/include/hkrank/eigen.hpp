#ifndef HKRANK_EIGEN_HPP
#define HKRANK_EIGEN_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hkrank {

/// Dense symmetric matrix; set() writes both (i,j) and (j,i) so symmetry is exact.
template <class T>
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n, fill) {}

  std::size_t order() const { return n_; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const T& v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  bool symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (!((*this)(i, j) == (*this)(j, i))) return false;
      }
    }
    return true;
  }
  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cyclic Jacobi rotations; eigenvalues in ascending order. Throws NonConvergence.
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix<double>& m, int max_sweeps = 100);

/// lambda_min >= -tol.
bool psd_eigen_oracle(const SymmetricMatrix<double>& m, double tol);

}  // namespace hkrank

#endif
