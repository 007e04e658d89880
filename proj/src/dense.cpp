#include "rotor/dense.hpp"

#include <cmath>
#include <limits>

namespace rotor {

template <typename T>
DenseMatrix<T> expm(const DenseMatrix<T>& a) {
  const std::size_t n = a.size();
  if (n == 0) return a;

  // Scale so that ||A / 2^s||_1 <= 1/2.
  const T nrm = a.norm1();
  int squarings = 0;
  if (nrm > T(0.5)) squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(nrm) / 0.5)));
  const T factor = std::ldexp(T(1), -squarings);

  DenseMatrix<T> scaled(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) = a(r, c) * factor;

  // Taylor terms until x^k/k! with x = 1/2 drops below the target; the tail
  // after term k is bounded by twice the first omitted term.
  DenseMatrix<T> result = DenseMatrix<T>::identity(n);
  DenseMatrix<T> term = DenseMatrix<T>::identity(n);
  const T target = static_cast<T>(1e-14) * std::numeric_limits<T>::epsilon() / std::numeric_limits<double>::epsilon();
  T bound = 1;
  for (int k = 1; k < 60; ++k) {
    term = term * scaled;
    const T inv_k = T(1) / static_cast<T>(k);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        term(r, c) *= inv_k;
        result(r, c) += term(r, c);
      }
    bound *= T(0.5) / static_cast<T>(k + 1);
    if (2 * bound < target) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

template DenseMatrix<double> expm(const DenseMatrix<double>&);
template DenseMatrix<long double> expm(const DenseMatrix<long double>&);

}  // namespace rotor
