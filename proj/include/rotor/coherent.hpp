#pragma once

#include "rotor/hilbert.hpp"
#include "rotor/specfun.hpp"
#include "rotor/vec3.hpp"

namespace rotor {

// Classical label (xbar, l): xbar on the unit sphere, l tangent to it.
struct PhasePoint {
  Vec3 xbar;
  Vec3 l;

  // Throws InvalidArgument unless |xbar| = 1 and l.xbar = 0 to 1e-12.
  static PhasePoint make(const Vec3& xbar, const Vec3& l);
  // xbar from (theta_bar, phi_bar); l with norm l_norm making angle alpha
  // with the meridian through xbar, so that l x xbar = |l|(sin a n + cos a n0).
  static PhasePoint from_angles(double theta_bar, double phi_bar, double l_norm, double alpha);
  // The standard family: l3 = j, |l| = sqrt(j(j+1)), alpha = arccos(l3/|l|).
  static PhasePoint standard(int j, double theta_bar, double phi_bar);

  double l_norm() const { return norm(l); }
};

// Coherent-state label z in C^3 with z.z = 1.
class ComplexDirection {
 public:
  // Throws InvalidArgument if |z.z - 1| exceeds 1e-12 * max(1, |z|^2); the
  // bilinear square of a vector with |z| ~ cosh|l| cannot be resolved better.
  explicit ComplexDirection(const CVec3& z);

  const CVec3& z() const { return z_; }
  cplx operator[](int i) const { return z_[static_cast<std::size_t>(i)]; }
  // |z|^2 = sum |z_i|^2 = cosh(2|l|).
  double abs_sq() const { return rotor::abs_sq(z_); }
  // |l| recovered from |z|^2.
  double l_norm() const;

 private:
  CVec3 z_;
};

ComplexDirection z_from_phase(const PhasePoint& p);
ComplexDirection z_from_angles(double theta_bar, double phi_bar, double l_norm, double alpha);

// Unit vectors n and n0 attached to the point (theta, phi).
Vec3 meridian_vector(double theta, double phi);
Vec3 parallel_vector(double theta, double phi);
Vec3 unit_vector(double theta, double phi);

// Default truncation ceil|l| + max(15, ceil(3 sqrt(|l|+1))), grown by 5 until
// the top-shell mass fraction is below kMaxTopShellMass. Throws
// InadequateTruncation past kMaxJMax.
int select_j_max(const ComplexDirection& z);
inline constexpr double kMaxTopShellMass = 1e-20;
inline constexpr int kMaxJMax = 200;

// sum_m |c_{j_max,m}|^2 / ||c||^2
double top_shell_mass(const StateVector& s);

// <j,m|z> from the closed-form Gegenbauer expression. Throws
// InadequateTruncation if the top-shell mass exceeds kMaxTopShellMass.
StateVector coherent_coefficients(const ComplexDirection& z, const RepresentationConfig& cfg);
// Same, without the truncation check.
StateVector coherent_coefficients_unchecked(const ComplexDirection& z, const RepresentationConfig& cfg);
// Unit-norm |z>/|||z>||, scaled before collapsing so any |l| stays finite.
// Not checked for truncation adequacy.
StateVector normalized_coherent_state(const ComplexDirection& z, const RepresentationConfig& cfg);
// Coefficients of |e3>.
StateVector fiducial_state(const RepresentationConfig& cfg);

// Independent construction: exp[kappa (z x e3).J] |e3>, exponentiated
// block by block. Throws DegenerateAxis when z3 = +-1 but z != e3.
StateVector rotation_oracle(const ComplexDirection& z, const RepresentationConfig& cfg);

// Series truncation: three consecutive terms below 1e-16 of the partial sum,
// or j = 200.
inline constexpr int kAutoCutoff = -1;
inline constexpr int kSeriesHardCap = 200;

// sum_j e^{-j(j+1)} (2j+1) P_j(z* . w) up to j_cut (kAutoCutoff for the
// convergence rule).
cplx overlap_series(const ComplexDirection& z, const ComplexDirection& w, int j_cut = kAutoCutoff);
ScaledComplex overlap_series_scaled(const CVec3& z, const CVec3& w, int j_cut = kAutoCutoff);
// <z|z> = sum_j e^{-j(j+1)} (2j+1) P_j(|z|^2).
double norm_sq(const ComplexDirection& z, int j_cut = kAutoCutoff);
// log <z|z>; finite for any |l|.
double log_norm_sq(const ComplexDirection& z);

// <s|op|s> / <s|s>. Throws ZeroState for the zero vector.
cplx expectation(const BandOperator& op, const StateVector& s);

// Real parts of <J_i> and <X_i> on s.
Vec3 mean_angular_momentum(const StateVector& s);
Vec3 mean_position(const StateVector& s);

// max_i ||(Z_i - z_i)|s>|| / |||s>||.
double z_eigen_residual(const StateVector& s, const ComplexDirection& z);
// Residual of the closed-form coherent state at the given truncation.
double z_eigen_residual(const ComplexDirection& z, const RepresentationConfig& cfg);

}  // namespace rotor
