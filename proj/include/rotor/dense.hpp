#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rotor {

// Square complex matrix, row-major. Extended precision is used for the
// exponential of non-unitary blocks, where entries span many decades.
template <typename T>
class DenseMatrix {
 public:
  using value_type = std::complex<T>;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  value_type& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  // Max column sum.
  T norm1() const {
    T best = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      T s = 0;
      for (std::size_t r = 0; r < n_; ++r) s += std::abs((*this)(r, c));
      if (s > best) best = s;
    }
    return best;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const value_type aik = a(i, k);
        if (aik == value_type(0)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<value_type> a_;
};

// exp(A) by scaling and squaring with a truncated Taylor series whose
// remainder bound for the scaled block is below 1e-14 (relative).
template <typename T>
DenseMatrix<T> expm(const DenseMatrix<T>& a);

extern template DenseMatrix<double> expm(const DenseMatrix<double>&);
extern template DenseMatrix<long double> expm(const DenseMatrix<long double>&);

}  // namespace rotor
