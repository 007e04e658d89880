#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace rotor {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

template <typename T>
constexpr std::array<T, 3> cross(const std::array<T, 3>& a, const std::array<T, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Bilinear (non-Hermitian) dot product.
template <typename T, typename U>
constexpr auto dot(const std::array<T, 3>& a, const std::array<U, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 scale(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline CVec3 to_complex(const Vec3& v) { return {cplx(v[0]), cplx(v[1]), cplx(v[2])}; }

inline CVec3 conj(const CVec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

// Sum of |z_i|^2.
inline double abs_sq(const CVec3& v) { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }

}  // namespace rotor
