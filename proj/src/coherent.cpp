#include "rotor/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotor/dense.hpp"
#include "rotor/errors.hpp"

namespace rotor {

PhasePoint PhasePoint::make(const Vec3& xbar, const Vec3& l) {
  if (std::abs(norm(xbar) - 1.0) > 1e-12) throw InvalidArgument("phase point: |xbar| must be 1");
  if (std::abs(dot(l, xbar)) > 1e-12 * std::max(1.0, norm(l)))
    throw InvalidArgument("phase point: l must be orthogonal to xbar");
  return {xbar, l};
}

Vec3 unit_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 meridian_vector(double theta, double phi) {
  return {std::cos(phi) * std::cos(theta), std::sin(phi) * std::cos(theta), -std::sin(theta)};
}

Vec3 parallel_vector(double /*theta*/, double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

PhasePoint PhasePoint::from_angles(double theta_bar, double phi_bar, double l_norm, double alpha) {
  const Vec3 x = unit_vector(theta_bar, phi_bar);
  const Vec3 tangent = scale(meridian_vector(theta_bar, phi_bar), std::sin(alpha)) +
                       scale(parallel_vector(theta_bar, phi_bar), std::cos(alpha));
  // x . (l x x) = 0 and x x (l x x) = l for l orthogonal to x.
  return make(x, scale(cross(x, tangent), l_norm));
}

PhasePoint PhasePoint::standard(int j, double theta_bar, double phi_bar) {
  if (j < 1) throw InvalidArgument("standard phase point needs j >= 1");
  const double l_norm = std::sqrt(static_cast<double>(j) * (j + 1));
  return from_angles(theta_bar, phi_bar, l_norm, std::acos(j / l_norm));
}

// ---------------------------------------------------------------------------

namespace {

double max_abs(const CVec3& z) { return std::max({std::abs(z[0]), std::abs(z[1]), std::abs(z[2])}); }

}  // namespace

ComplexDirection::ComplexDirection(const CVec3& z) : z_(z) {
  for (const cplx& c : z)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidArgument("complex direction has non-finite components (|l| too large for double)");
  // Scaled by the largest component so z.z and |z|^2 cannot overflow.
  const double m = std::max(1.0, max_abs(z));
  const CVec3 u{z[0] / m, z[1] / m, z[2] / m};
  const cplx sq = dot(u, u);
  const double inv = 1.0 / (m * m);
  if (std::abs(sq - inv) > 1e-12 * std::max(inv, rotor::abs_sq(u)))
    throw InvalidArgument("complex direction must satisfy z.z = 1");
}

double ComplexDirection::l_norm() const {
  const double m = max_abs(z_);
  if (m < 1e100) return 0.5 * std::acosh(std::max(1.0, abs_sq()));
  // acosh(x) = log(2x) to double precision once x > 1e100.
  const CVec3 u{z_[0] / m, z_[1] / m, z_[2] / m};
  return 0.5 * (2.0 * std::log(m) + std::log(rotor::abs_sq(u)) + std::log(2.0));
}

ComplexDirection z_from_phase(const PhasePoint& p) {
  const double ln = p.l_norm();
  const double ch = std::cosh(ln);
  const double sh_over = ln == 0.0 ? 1.0 : std::sinh(ln) / ln;
  const Vec3 lx = cross(p.l, p.xbar);
  CVec3 z;
  for (std::size_t i = 0; i < 3; ++i) z[i] = cplx(ch * p.xbar[i], sh_over * lx[i]);
  return ComplexDirection(z);
}

ComplexDirection z_from_angles(double theta_bar, double phi_bar, double l_norm, double alpha) {
  const Vec3 x = unit_vector(theta_bar, phi_bar);
  const Vec3 n = meridian_vector(theta_bar, phi_bar);
  const Vec3 n0 = parallel_vector(theta_bar, phi_bar);
  const double ch = std::cosh(l_norm);
  const double sh = std::sinh(l_norm);
  CVec3 z;
  for (std::size_t i = 0; i < 3; ++i) z[i] = cplx(ch * x[i], sh * (std::sin(alpha) * n[i] + std::cos(alpha) * n0[i]));
  return ComplexDirection(z);
}

// ---------------------------------------------------------------------------

double top_shell_mass(const StateVector& s) {
  const double total = s.norm_sq();
  if (total == 0.0) throw ZeroState("top-shell mass of the zero state");
  return s.shell_mass(s.config().j_max()) / total;
}

namespace {

// Coefficients divided by exp(log_shift).
StateVector coefficients_impl(const ComplexDirection& z, const RepresentationConfig& cfg, double log_shift) {
  const int jm = cfg.j_max();
  StateVector s(cfg);
  const cplx i_unit(0.0, 1.0);
  for (int m = -jm; m <= jm; ++m) {
    const int am = std::abs(m);
    const double eps = m > 0 ? 1.0 : -1.0;
    // ((-eps z1 + i z2)/2)^{|m|}, equal to 1 at m = 0.
    ScaledComplex power = ScaledComplex::from_real(1.0);
    if (am > 0) {
      const ScaledComplex base = ScaledComplex::from_value((-eps * z[0] + i_unit * z[1]) * 0.5);
      for (int k = 0; k < am; ++k) power = power * base;
    }
    if (power.is_zero()) continue;
    const auto gegen = gegenbauer_sequence(jm - am, am + 0.5, z[2]);
    // (2|m|)!/|m|! sqrt((j-|m|)!/(j+|m|)!) at j = |m| is sqrt(C(2|m|, |m|));
    // later shells multiply by (j-|m|)/(j+|m|) under the square root.
    double binom = 1.0;
    for (int k = 1; k <= am; ++k) binom *= static_cast<double>(am + k) / k;
    ScaledComplex factorial_part = ScaledComplex::from_real(std::sqrt(binom));
    for (int j = am; j <= jm; ++j) {
      if (j > am) factorial_part = factorial_part * std::sqrt(static_cast<double>(j - am) / (j + am));
      const ScaledComplex damping = ScaledComplex::from_log(-0.5 * j * (j + 1.0), 0.0) * std::sqrt(2.0 * j + 1.0);
      s(j, m) = (damping * factorial_part * power * gegen[static_cast<std::size_t>(j - am)]).value_scaled(log_shift);
    }
  }
  return s;
}

}  // namespace

StateVector coherent_coefficients_unchecked(const ComplexDirection& z, const RepresentationConfig& cfg) {
  return coefficients_impl(z, cfg, 0.0);
}

StateVector normalized_coherent_state(const ComplexDirection& z, const RepresentationConfig& cfg) {
  StateVector s = coefficients_impl(z, cfg, 0.5 * log_norm_sq(z));
  s *= 1.0 / s.norm();
  return s;
}

StateVector coherent_coefficients(const ComplexDirection& z, const RepresentationConfig& cfg) {
  StateVector s = coherent_coefficients_unchecked(z, cfg);
  const double mass = top_shell_mass(s);
  if (mass > kMaxTopShellMass) throw InadequateTruncation(cfg.j_max(), mass);
  return s;
}

int select_j_max(const ComplexDirection& z) {
  const double ln = z.l_norm();
  if (!(ln < kMaxJMax)) throw InadequateTruncation(kMaxJMax, 1.0);
  int j_max = static_cast<int>(std::ceil(ln)) + std::max(15, static_cast<int>(std::ceil(3.0 * std::sqrt(ln + 1.0))));
  double mass = 1.0;
  for (; j_max <= kMaxJMax; j_max += 5) {
    mass = top_shell_mass(normalized_coherent_state(z, RepresentationConfig(j_max)));
    if (mass <= kMaxTopShellMass) return j_max;
  }
  throw InadequateTruncation(j_max - 5, mass);
}

StateVector fiducial_state(const RepresentationConfig& cfg) {
  StateVector s(cfg);
  for (int j = 0; j <= cfg.j_max(); ++j) s(j, 0) = std::exp(-0.5 * j * (j + 1.0)) * std::sqrt(2.0 * j + 1.0);
  return s;
}

StateVector rotation_oracle(const ComplexDirection& z, const RepresentationConfig& cfg) {
  using ld = long double;
  using lc = std::complex<ld>;
  const lc z1(z[0].real(), z[0].imag());
  const lc z2(z[1].real(), z[1].imag());
  const lc z3(z[2].real(), z[2].imag());

  const lc one_minus = ld(1) - z3 * z3;
  if (std::abs(one_minus) < 1e-14L) {
    if (std::abs(z[0]) < 1e-14 && std::abs(z[1]) < 1e-14 && std::abs(z[2] - 1.0) < 1e-14) return fiducial_state(cfg);
    throw DegenerateAxis("rotation oracle: z3 = +-1 with z != e3");
  }

  // kappa = arccosh(z3)/sqrt(1 - z3^2) on the sheet where arccosh(z3) =
  // i arccos(z3); then sin(arccos z3) = sqrt(1 - z3^2) on principal branches
  // and the ratio is analytic at z3 = 1.
  const lc i_unit(0, 1);
  const lc kappa = i_unit * std::acos(z3) / std::sqrt(one_minus);

  // kappa (z x e3).J = kappa (z2 J1 - z1 J2) = a J+ + b J-.
  const lc a = i_unit * kappa * (z1 - i_unit * z2) / ld(2);
  const lc b = -i_unit * kappa * (z1 + i_unit * z2) / ld(2);

  StateVector out(cfg);
  for (int j = 0; j <= cfg.j_max(); ++j) {
    const std::size_t n = static_cast<std::size_t>(2 * j + 1);
    // Diagonal similarity diag(r^m) equalizes |a| and |b| so that column
    // entries do not span |a/b|^j decades inside the exponential.
    ld log_r = 0;
    if (std::abs(a) > 0 && std::abs(b) > 0) log_r = 0.5L * std::log(std::abs(a) / std::abs(b));
    if (j > 0) log_r = std::clamp(log_r, -ld(4000) / j, ld(4000) / j);
    const ld r = std::exp(log_r);

    DenseMatrix<ld> gen(n);
    for (int m = -j; m <= j; ++m) {
      const std::size_t col = static_cast<std::size_t>(m + j);
      if (m < j) gen(col + 1, col) = a / r * static_cast<ld>(jpm_amplitude(Sign::plus, j, m));
      if (m > -j) gen(col - 1, col) = b * r * static_cast<ld>(jpm_amplitude(Sign::minus, j, m));
    }
    const DenseMatrix<ld> e = expm(gen);
    const ld fid = std::exp(-0.5L * j * (j + 1.0L)) * std::sqrt(2.0L * j + 1.0L);
    for (int m = -j; m <= j; ++m) {
      const lc v = e(static_cast<std::size_t>(m + j), static_cast<std::size_t>(j)) * std::exp(log_r * m) * fid;
      out(j, m) = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ScaledComplex overlap_weight(int j) {
  return ScaledComplex::from_log(-static_cast<double>(j) * (j + 1) + std::log(2.0 * j + 1.0), 0.0);
}

}  // namespace

ScaledComplex overlap_series_scaled(const CVec3& z, const CVec3& w, int j_cut) {
  const cplx arg = dot(conj(z), w);
  return legendre_series(arg, j_cut, overlap_weight, kSeriesHardCap);
}

cplx overlap_series(const ComplexDirection& z, const ComplexDirection& w, int j_cut) {
  return overlap_series_scaled(z.z(), w.z(), j_cut).value();
}

double norm_sq(const ComplexDirection& z, int j_cut) {
  return overlap_series_scaled(z.z(), z.z(), j_cut).value().real();
}

double log_norm_sq(const ComplexDirection& z) { return overlap_series_scaled(z.z(), z.z()).log_magnitude(); }

cplx expectation(const BandOperator& op, const StateVector& s) {
  const double n = s.norm_sq();
  if (n == 0.0) throw ZeroState("expectation value in the zero state");
  return inner_product(s, op.apply(s)) / n;
}

Vec3 mean_angular_momentum(const StateVector& s) {
  const double n = s.norm_sq();
  if (n == 0.0) throw ZeroState("expectation value in the zero state");
  const cplx jp = inner_product(s, apply_jpm(s, Sign::plus)) / n;
  const cplx j3 = inner_product(s, apply_j3(s)) / n;
  return {jp.real(), jp.imag(), j3.real()};
}

Vec3 mean_position(const StateVector& s) {
  const double n = s.norm_sq();
  if (n == 0.0) throw ZeroState("expectation value in the zero state");
  const cplx xp = inner_product(s, apply_xpm(s, Sign::plus)) / n;
  const cplx x3 = inner_product(s, apply_x3(s)) / n;
  return {xp.real(), xp.imag(), x3.real()};
}

double z_eigen_residual(const StateVector& s, const ComplexDirection& z) {
  const double n = s.norm();
  if (n == 0.0) throw ZeroState("eigen-residual of the zero state");
  double worst = 0.0;
  for (int axis = 1; axis <= 3; ++axis) {
    StateVector r = build_z_operator(s.config(), axis).apply(s);
    r -= z[axis - 1] * s;
    worst = std::max(worst, r.norm() / n);
  }
  return worst;
}

double z_eigen_residual(const ComplexDirection& z, const RepresentationConfig& cfg) {
  return z_eigen_residual(coherent_coefficients_unchecked(z, cfg), z);
}

}  // namespace rotor
