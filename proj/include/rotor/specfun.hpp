#pragma once

#include <complex>
#include <vector>

namespace rotor {

// Complex number carried as a magnitude exponent and a phase, so products of
// factors that would overflow or underflow a double stay representable.
// Internally a normalized complex mantissa times 2^exponent; log_magnitude()
// and phase() are the natural-log / argument views. Exact zero is a flag.
class ScaledComplex {
 public:
  // Exact zero.
  ScaledComplex() = default;

  static ScaledComplex from_value(std::complex<double> v);
  static ScaledComplex from_real(double v) { return from_value({v, 0.0}); }
  static ScaledComplex from_log(double log_magnitude, double phase);

  bool is_zero() const { return mant_ == 0.0; }
  // Meaningless for zero; callers check is_zero() first.
  double log_magnitude() const;
  // In (-pi, pi].
  double phase() const;

  // exp(log_magnitude) * e^{i phase}; 0 for the zero flag, may be inf/0 when
  // the magnitude is outside the double range.
  std::complex<double> value() const;
  // Value divided by exp(log_shift).
  std::complex<double> value_scaled(double log_shift) const;

  ScaledComplex operator*(const ScaledComplex& other) const;
  ScaledComplex operator*(double s) const;
  ScaledComplex operator+(const ScaledComplex& other) const;
  ScaledComplex operator-(const ScaledComplex& other) const;
  ScaledComplex operator-() const;

 private:
  ScaledComplex(std::complex<double> mant, long exp2);

  std::complex<double> mant_{0.0, 0.0};
  long exp2_ = 0;
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

// P_n(w) by upward three-term recurrence.
ScaledComplex legendre_p(int n, std::complex<double> w);

// C_n^alpha(w) by upward three-term recurrence.
ScaledComplex gegenbauer_c(int n, double alpha, std::complex<double> w);

// P_0(w) .. P_{n_max}(w).
std::vector<ScaledComplex> legendre_sequence(int n_max, std::complex<double> w);

// C_0^alpha(w) .. C_{n_max}^alpha(w).
std::vector<ScaledComplex> gegenbauer_sequence(int n_max, double alpha, std::complex<double> w);

// log(n!) for n >= 0.
double log_factorial(int n);

// sum_j weight(j) P_j(w) for j = 0 .. j_cut, with weight(j) -> ScaledComplex.
// A negative j_cut selects the convergence rule: stop once three consecutive
// terms fall below 1e-16 of the running sum, or at j = hard_cap.
template <typename Weight>
ScaledComplex legendre_series(std::complex<double> w, int j_cut, Weight&& weight, int hard_cap = 200) {
  const bool automatic = j_cut < 0;
  const int last = automatic ? hard_cap : j_cut;
  const ScaledComplex sw = ScaledComplex::from_value(w);
  const double log_rel = -36.841361487904734;  // log(1e-16)
  ScaledComplex p_prev;
  ScaledComplex p_cur = ScaledComplex::from_real(1.0);
  ScaledComplex sum;
  int small_run = 0;
  for (int j = 0; j <= last; ++j) {
    if (j == 1) {
      p_prev = p_cur;
      p_cur = sw;
    } else if (j > 1) {
      const double n = j - 1;
      ScaledComplex next = sw * p_cur * ((2.0 * n + 1.0) / (n + 1.0)) - p_prev * (n / (n + 1.0));
      p_prev = p_cur;
      p_cur = next;
    }
    const ScaledComplex term = weight(j) * p_cur;
    sum = sum + term;
    if (automatic) {
      const bool small =
          term.is_zero() || (!sum.is_zero() && term.log_magnitude() < sum.log_magnitude() + log_rel);
      small_run = small ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
  }
  return sum;
}

}  // namespace rotor
