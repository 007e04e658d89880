#pragma once

// Reference implementations for tests. Each takes a different route from the
// library code it checks: explicit sums instead of recurrences, quadrature
// instead of closed forms, spherical harmonics instead of Legendre series.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using lcplx = std::complex<long double>;

inline long double lfact(int n) { return std::tgamma(static_cast<long double>(n) + 1.0L); }

// P_n(w) = 2^-n sum_k (-1)^k C(n,k) C(2n-2k,n) w^(n-2k).
inline std::complex<double> legendre_explicit(int n, std::complex<double> w) {
  lcplx sum = 0.0L;
  const lcplx lw(w.real(), w.imag());
  for (int k = 0; 2 * k <= n; ++k) {
    const long double c =
        (k % 2 ? -1.0L : 1.0L) * lfact(n) / (lfact(k) * lfact(n - k)) * lfact(2 * n - 2 * k) / (lfact(n) * lfact(n - 2 * k));
    sum += c * std::pow(lw, n - 2 * k);
  }
  sum /= std::pow(2.0L, n);
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// C_n^a(w) = sum_k (-1)^k Gamma(n-k+a) / (Gamma(a) k! (n-2k)!) (2w)^(n-2k).
inline std::complex<double> gegenbauer_explicit(int n, double alpha, std::complex<double> w) {
  lcplx sum = 0.0L;
  const lcplx lw(w.real(), w.imag());
  const long double a = alpha;
  for (int k = 0; 2 * k <= n; ++k) {
    const long double c = (k % 2 ? -1.0L : 1.0L) * std::tgamma(n - k + a) / (std::tgamma(a) * lfact(k) * lfact(n - 2 * k));
    sum += c * std::pow(2.0L * lw, n - 2 * k);
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// log P_n(cosh eta) from Laplace's integral (1/pi) int_0^pi (w + sqrt(w^2-1) cos t)^n dt,
// with the dominant factor e^{n eta} taken out. Trapezoid on a smooth even
// periodic integrand converges spectrally.
inline double log_legendre_cosh(int n, double eta) {
  const int nodes = 4000;
  const double w = std::cosh(eta), s = std::sinh(eta), e = std::exp(eta);
  long double acc = 0.0L;
  for (int k = 0; k <= nodes; ++k) {
    const double t = std::numbers::pi * k / nodes;
    const long double g = (w + s * std::cos(t)) / e;
    acc += (k == 0 || k == nodes ? 0.5L : 1.0L) * std::pow(g, n);
  }
  acc /= nodes;
  return n * eta + static_cast<double>(std::log(acc));
}

// Fully normalized Y_l^m(theta, phi) with the Condon-Shortley phase.
inline std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double x = std::cos(theta), sx = std::sin(theta);
  // P_am^am, then upward in l.
  long double pmm = 1.0L;
  for (int k = 1; k <= am; ++k) pmm *= -(2.0L * k - 1.0L) * sx;
  long double p = pmm;
  if (l > am) {
    long double p1 = x * (2.0L * am + 1.0L) * pmm;
    long double p0 = pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const long double p2 = (x * (2.0L * ll - 1.0L) * p1 - (ll + am - 1.0L) * p0) / (ll - am);
      p0 = p1;
      p1 = p2;
    }
    p = p1;
  }
  const long double norm = std::sqrt((2.0L * l + 1.0L) / (4.0L * std::numbers::pi_v<long double>) * lfact(l - am) / lfact(l + am));
  std::complex<double> y = static_cast<double>(norm * p) * std::polar(1.0, am * phi);
  if (m < 0) y = (am % 2 ? -1.0 : 1.0) * std::conj(y);
  return y;
}

// sum_j (2j+1) e^{-j(j+1)} by plain summation.
inline double fiducial_norm_sq() {
  double s = 0.0;
  for (int j = 0; j < 60; ++j) s += (2.0 * j + 1.0) * std::exp(-static_cast<double>(j) * (j + 1));
  return s;
}

// Dense matrix exponential by a plain Taylor series in long double with
// repeated squaring; used only on small blocks.
inline std::vector<lcplx> expm_taylor(const std::vector<lcplx>& a, int n) {
  long double nrm = 0.0L;
  for (const auto& v : a) nrm = std::max(nrm, std::abs(v));
  int squarings = 0;
  while (nrm * n > 0.1L) {
    nrm /= 2;
    ++squarings;
  }
  const long double scale = std::ldexp(1.0L, -squarings);
  std::vector<lcplx> term(n * n, 0.0L), result(n * n, 0.0L), next(n * n);
  for (int i = 0; i < n; ++i) term[i * n + i] = result[i * n + i] = 1.0L;
  for (int k = 1; k < 40; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        lcplx s = 0.0L;
        for (int l = 0; l < n; ++l) s += term[i * n + l] * a[l * n + j] * scale;
        next[i * n + j] = s / static_cast<long double>(k);
      }
    term = next;
    for (int i = 0; i < n * n; ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        lcplx acc = 0.0L;
        for (int l = 0; l < n; ++l) acc += result[i * n + l] * result[l * n + j];
        next[i * n + j] = acc;
      }
    result = next;
  }
  return result;
}

inline std::complex<double> random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

}  // namespace oracle
