#include "rotor/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rotor/dense.hpp"
#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Exact for the integer multiples of 2 pi that matter here.
double reduce_time(double t) { return std::remainder(t, kTwoPi); }

bool is_axial(const Vec3& omega) { return omega[0] == 0.0 && omega[1] == 0.0; }

}  // namespace

StateVector free_evolve(const StateVector& s, double t) {
  const double r = reduce_time(t);
  StateVector out = s;
  for (int j = 0; j <= s.config().j_max(); ++j) {
    const double k = 0.5 * j * (j + 1.0);
    const cplx phase = std::polar(1.0, -r * k);
    for (int m = -j; m <= j; ++m) out(j, m) *= phase;
  }
  return out;
}

StateVector rotation_evolve(const StateVector& s, const Vec3& omega, double t) {
  StateVector out = s;
  const int jm = s.config().j_max();
  if (is_axial(omega)) {
    for (int j = 0; j <= jm; ++j)
      for (int m = -j; m <= j; ++m) out(j, m) *= std::polar(1.0, -m * omega[2] * t);
    return out;
  }
  // -i t (omega.J) = -i t [(w1 - i w2)/2 J+ + (w1 + i w2)/2 J- + w3 J3]
  const cplx mi_t(0.0, -t);
  const cplx up = mi_t * cplx(omega[0], -omega[1]) * 0.5;
  const cplx down = mi_t * cplx(omega[0], omega[1]) * 0.5;
  for (int j = 0; j <= jm; ++j) {
    const auto n = static_cast<std::size_t>(2 * j + 1);
    DenseMatrix<double> gen(n);
    for (int m = -j; m <= j; ++m) {
      const auto c = static_cast<std::size_t>(m + j);
      gen(c, c) = mi_t * (omega[2] * m);
      if (m < j) gen(c + 1, c) = up * jpm_amplitude(Sign::plus, j, m);
      if (m > -j) gen(c - 1, c) = down * jpm_amplitude(Sign::minus, j, m);
    }
    const DenseMatrix<double> u = expm(gen);
    for (int mr = -j; mr <= j; ++mr) {
      cplx acc = 0.0;
      for (int mc = -j; mc <= j; ++mc) acc += u(static_cast<std::size_t>(mr + j), static_cast<std::size_t>(mc + j)) * s(j, mc);
      out(j, mr) = acc;
    }
  }
  return out;
}

StateVector evolve(const StateVector& s, const Hamiltonian& h, double t) {
  if (const auto* rot = std::get_if<RotationHamiltonian>(&h)) return rotation_evolve(s, rot->omega, t);
  return free_evolve(s, t);
}

ComplexDirection z_of_t(const ComplexDirection& z, const Vec3& omega, double t) {
  const double w = norm(omega);
  if (w == 0.0) return z;
  const CVec3 wz = cross(to_complex(omega), z.z());
  const cplx w_dot_z = dot(omega, z.z());
  const double c = std::cos(w * t);
  const double s = std::sin(w * t) / w;
  const double v = (1.0 - c) / (w * w);
  CVec3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = c * z.z()[i] + s * wz[i] + v * omega[i] * w_dot_z;
  return ComplexDirection(out);
}

// ---------------------------------------------------------------------------

int TimeSeries::clamp_count() const {
  return static_cast<int>(std::count_if(values.begin(), values.end(), [](const auto& r) { return r.clamped; }));
}

std::vector<double> TimeSeries::theta() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& r : values) out.push_back(r.theta);
  return out;
}

namespace {

RepresentationConfig pick_config(const ComplexDirection& z, std::optional<int> j_max) {
  return RepresentationConfig(j_max ? *j_max : select_j_max(z));
}

}  // namespace

CoherentEvolution::CoherentEvolution(ComplexDirection z, Hamiltonian h, std::optional<int> j_max)
    : z_(z),
      h_(h),
      cfg_(pick_config(z, j_max)),
      initial_(normalized_coherent_state(z_, cfg_)),
      tail_mass_(top_shell_mass(initial_)) {}

StateVector CoherentEvolution::state_at(double t) const { return evolve(initial_, h_, t); }

ObservableRecord CoherentEvolution::observe(double t) const {
  const StateVector s = state_at(t);
  const double n = s.norm_sq();
  ObservableRecord rec;
  rec.x3_mean = (inner_product(s, apply_x3(s)) / n).real();
  rec.xplus_mean = inner_product(s, apply_xpm(s, Sign::plus)) / n;
  rec.j_mean = mean_angular_momentum(s);

  const double arg = std::exp(0.25) * rec.x3_mean;
  rec.clamped = std::abs(arg) > 1.0;
  rec.theta = std::acos(std::clamp(arg, -1.0, 1.0));

  if (std::abs(rec.xplus_mean) < kPhaseThreshold) {
    rec.phi = std::numeric_limits<double>::quiet_NaN();
  } else {
    double phi = std::arg(rec.xplus_mean);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    rec.phi = phi;
  }
  return rec;
}

double theta_of_t(const ComplexDirection& z, double t, const Hamiltonian& h) {
  return CoherentEvolution(z, h).observe(t).theta;
}

double phi_of_t(const ComplexDirection& z, double t, const Hamiltonian& h) {
  const auto rec = CoherentEvolution(z, h).observe(t);
  if (!rec.phi_defined()) throw UndefinedPhase(t);
  return rec.phi;
}

std::vector<double> uniform_times(double t0, double t1, int samples) {
  if (samples < 1) throw InvalidArgument("uniform_times: need at least one sample");
  if (samples == 1) return {t0};
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (samples - 1);
  t.back() = t1;
  return t;
}

std::vector<double> unwrap_phase(std::span<const double> phi) {
  std::vector<double> out(phi.begin(), phi.end());
  double offset = 0.0;
  double last = std::numeric_limits<double>::quiet_NaN();
  for (auto& v : out) {
    if (v != v) continue;
    if (last == last) {
      const double jump = v - last;
      if (jump < -std::numbers::pi) offset += kTwoPi * std::round(-jump / kTwoPi);
      if (jump > std::numbers::pi) offset -= kTwoPi * std::round(jump / kTwoPi);
    }
    last = v;
    v += offset;
  }
  return out;
}

TimeSeries sample_series(const CoherentEvolution& evo, std::span<const double> times, int threads) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidArgument("sample times must be strictly increasing");
  TimeSeries ts;
  ts.times.assign(times.begin(), times.end());
  ts.values.resize(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) { ts.values[i] = evo.observe(times[i]); });
  std::vector<double> phi;
  phi.reserve(ts.values.size());
  for (const auto& r : ts.values) phi.push_back(r.phi);
  ts.phi_unwrapped = unwrap_phase(phi);
  return ts;
}

std::vector<Vec3> trajectory(const ComplexDirection& z, std::span<const double> times, const Hamiltonian& h,
                             int threads) {
  const CoherentEvolution evo(z, h);
  std::vector<ObservableRecord> recs(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) { recs[i] = evo.observe(times[i]); });
  std::vector<Vec3> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!recs[i].phi_defined()) throw UndefinedPhase(times[i]);
    out.push_back(unit_vector(recs[i].theta, recs[i].phi));
  }
  return out;
}

// ---------------------------------------------------------------------------

SphericalGrid::SphericalGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 2 || n_phi < 2) throw InvalidArgument("spherical grid needs at least 2 x 2 nodes");
  phi_step_ = kTwoPi / n_phi;
  thetas_.resize(static_cast<std::size_t>(n_theta));
  theta_weights_.resize(static_cast<std::size_t>(n_theta));
  for (int a = 0; a < n_theta; ++a) {
    const double th = (a + 0.5) * std::numbers::pi / n_theta;
    double acc = 1.0;
    for (int k = 1; k <= n_theta / 2; ++k) acc -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
    thetas_[static_cast<std::size_t>(a)] = th;
    theta_weights_[static_cast<std::size_t>(a)] = 2.0 / n_theta * acc;
  }
}

double SphericalGrid::phi(int b) const { return phi_step_ * b; }

Vec3 SphericalGrid::point(int a, int b) const { return unit_vector(theta(a), phi(b)); }

double DensityField::integral() const {
  double acc = 0.0;
  for (int a = 0; a < grid.n_theta(); ++a)
    for (int b = 0; b < grid.n_phi(); ++b) acc += at(a, b) * grid.weight(a, b);
  return acc;
}

double DensityField::max_value() const { return *std::max_element(values.begin(), values.end()); }

namespace {

// e^{-j(j+1)(1+it)/2} (2j+1) for j = 0 .. kSeriesHardCap.
std::vector<ScaledComplex> kernel_weights(double t) {
  const double r = reduce_time(t);
  std::vector<ScaledComplex> w(kSeriesHardCap + 1);
  for (int j = 0; j <= kSeriesHardCap; ++j) {
    const double k = 0.5 * j * (j + 1.0);
    w[static_cast<std::size_t>(j)] = ScaledComplex::from_log(-k + std::log(2.0 * j + 1.0), -r * k);
  }
  return w;
}

ScaledComplex kernel(const std::vector<ScaledComplex>& weights, const CVec3& z, const Vec3& x, int j_cut) {
  const cplx arg = dot(x, z);
  return legendre_series(
      arg, j_cut, [&](int j) { return weights[static_cast<std::size_t>(j)]; }, kSeriesHardCap);
}

DensityField density_from_kernel(const CVec3& z, double log_norm, const SphericalGrid& grid, double t_kernel,
                                 double t_label, int threads) {
  const auto weights = kernel_weights(t_kernel);
  DensityField field{grid, std::vector<double>(grid.size()), t_label};
  const double log_4pi = std::log(4.0 * std::numbers::pi);
  parallel_for(static_cast<std::size_t>(grid.n_theta()), threads, [&](std::size_t row) {
    const int a = static_cast<int>(row);
    for (int b = 0; b < grid.n_phi(); ++b) {
      const ScaledComplex s = kernel(weights, z, grid.point(a, b), kAutoCutoff);
      field.values[grid.index(a, b)] = s.is_zero() ? 0.0 : std::exp(2.0 * s.log_magnitude() - log_norm - log_4pi);
    }
  });
  return field;
}

}  // namespace

cplx wavefunction(const ComplexDirection& z, const Vec3& x, double t, int j_cut) {
  const auto weights = kernel_weights(t);
  return kernel(weights, z.z(), x, j_cut).value() / std::sqrt(4.0 * std::numbers::pi);
}

DensityField density_free(const ComplexDirection& z, const SphericalGrid& grid, double t, int threads) {
  return density_from_kernel(z.z(), log_norm_sq(z), grid, t, t, threads);
}

DensityField density_rotation(const ComplexDirection& z, const SphericalGrid& grid, const Vec3& omega, double t,
                              int threads) {
  return density_from_kernel(z_of_t(z, omega, t).z(), log_norm_sq(z), grid, 0.0, t, threads);
}

DensityField density(const ComplexDirection& z, const SphericalGrid& grid, const Hamiltonian& h, double t,
                     int threads) {
  if (const auto* rot = std::get_if<RotationHamiltonian>(&h)) return density_rotation(z, grid, rot->omega, t, threads);
  return density_free(z, grid, t, threads);
}

}  // namespace rotor
