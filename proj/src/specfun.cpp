#include "rotor/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rotor/errors.hpp"

namespace rotor {

double wrap_phase(double phase) {
  double r = std::remainder(phase, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

}  // namespace

ScaledComplex::ScaledComplex(std::complex<double> mant, long exp2) : mant_(mant), exp2_(exp2) {
  const double big = std::max(std::abs(mant_.real()), std::abs(mant_.imag()));
  if (big == 0.0 || !std::isfinite(big)) {
    if (big == 0.0) {
      mant_ = 0.0;
      exp2_ = 0;
    }
    return;
  }
  int e = 0;
  std::frexp(big, &e);
  mant_ = {std::ldexp(mant_.real(), -e), std::ldexp(mant_.imag(), -e)};
  exp2_ += e;
}

ScaledComplex ScaledComplex::from_value(std::complex<double> v) { return {v, 0}; }

ScaledComplex ScaledComplex::from_log(double log_magnitude, double phase) {
  // Range reduction in extended precision keeps integer-valued logs exact to
  // ~1e-19 relative.
  const long double lm = log_magnitude;
  const long double e = std::floor(lm / kLn2);
  const double rest = static_cast<double>(std::exp(lm - e * kLn2));
  return {std::polar(rest, phase), static_cast<long>(e)};
}

double ScaledComplex::log_magnitude() const {
  return static_cast<double>(std::log(static_cast<long double>(std::abs(mant_))) + exp2_ * kLn2);
}

double ScaledComplex::phase() const { return wrap_phase(std::arg(mant_)); }

std::complex<double> ScaledComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  const int e = static_cast<int>(std::clamp(exp2_, -4000L, 4000L));
  return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
}

std::complex<double> ScaledComplex::value_scaled(double log_shift) const {
  if (is_zero()) return {0.0, 0.0};
  const long double k = exp2_ * kLn2 - static_cast<long double>(log_shift);
  if (k > 800.0L) return mant_ * std::numeric_limits<double>::infinity();
  if (k < -800.0L) return {0.0, 0.0};
  return mant_ * static_cast<double>(std::exp(k));
}

ScaledComplex ScaledComplex::operator*(const ScaledComplex& other) const {
  if (is_zero() || other.is_zero()) return {};
  return {mant_ * other.mant_, exp2_ + other.exp2_};
}

ScaledComplex ScaledComplex::operator*(double s) const {
  if (is_zero() || s == 0.0) return {};
  return {mant_ * s, exp2_};
}

ScaledComplex ScaledComplex::operator+(const ScaledComplex& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  const long d = exp2_ - other.exp2_;
  if (d > 1100) return *this;
  if (d < -1100) return other;
  if (d >= 0) return {mant_ + std::complex<double>(std::ldexp(other.mant_.real(), static_cast<int>(-d)),
                                                    std::ldexp(other.mant_.imag(), static_cast<int>(-d))),
                      exp2_};
  return {std::complex<double>(std::ldexp(mant_.real(), static_cast<int>(d)), std::ldexp(mant_.imag(), static_cast<int>(d))) +
              other.mant_,
          other.exp2_};
}

ScaledComplex ScaledComplex::operator-() const { return {-mant_, exp2_}; }

ScaledComplex ScaledComplex::operator-(const ScaledComplex& other) const { return *this + (-other); }

std::vector<ScaledComplex> gegenbauer_sequence(int n_max, double alpha, std::complex<double> w) {
  std::vector<ScaledComplex> c;
  if (n_max < 0) return c;
  c.reserve(static_cast<std::size_t>(n_max) + 1);
  const ScaledComplex sw = ScaledComplex::from_value(w);
  c.push_back(ScaledComplex::from_real(1.0));
  if (n_max == 0) return c;
  c.push_back(sw * (2.0 * alpha));
  for (int n = 2; n <= n_max; ++n) {
    const double a = 2.0 * (n + alpha - 1.0) / n;
    const double b = (n + 2.0 * alpha - 2.0) / n;
    c.push_back(sw * c[n - 1] * a - c[n - 2] * b);
  }
  return c;
}

std::vector<ScaledComplex> legendre_sequence(int n_max, std::complex<double> w) {
  std::vector<ScaledComplex> p;
  if (n_max < 0) return p;
  p.reserve(static_cast<std::size_t>(n_max) + 1);
  const ScaledComplex sw = ScaledComplex::from_value(w);
  p.push_back(ScaledComplex::from_real(1.0));
  if (n_max == 0) return p;
  p.push_back(sw);
  for (int n = 1; n < n_max; ++n) {
    const double a = (2.0 * n + 1.0) / (n + 1.0);
    const double b = static_cast<double>(n) / (n + 1.0);
    p.push_back(sw * p[n] * a - p[n - 1] * b);
  }
  return p;
}

ScaledComplex legendre_p(int n, std::complex<double> w) {
  if (n < 0) throw InvalidArgument("legendre_p: negative degree");
  return legendre_sequence(n, w).back();
}

ScaledComplex gegenbauer_c(int n, double alpha, std::complex<double> w) {
  if (n < 0) throw InvalidArgument("gegenbauer_c: negative degree");
  if (!(alpha > 0.0)) throw InvalidArgument("gegenbauer_c: alpha must be positive");
  return gegenbauer_sequence(n, alpha, w).back();
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace rotor
