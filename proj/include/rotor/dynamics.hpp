#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rotor/coherent.hpp"
#include "rotor/hilbert.hpp"

namespace rotor {

// H = J^2 / 2
struct FreeHamiltonian {};
// H0 = omega . J
struct RotationHamiltonian {
  Vec3 omega;
};
using Hamiltonian = std::variant<FreeHamiltonian, RotationHamiltonian>;

// c_{jm} -> e^{-i t j(j+1)/2} c_{jm}. t is reduced modulo 2 pi first, which is
// exact because j(j+1)/2 is an integer; t = 2 pi is therefore the identity.
StateVector free_evolve(const StateVector& s, double t);
// e^{-i t omega.J}, block by block; omega = (0, 0, w3) uses exact diagonal phases.
StateVector rotation_evolve(const StateVector& s, const Vec3& omega, double t);
StateVector evolve(const StateVector& s, const Hamiltonian& h, double t);

// Rodrigues rotation of z by angle |omega| t about omega.
ComplexDirection z_of_t(const ComplexDirection& z, const Vec3& omega, double t);

// Observables of the evolved coherent state at one time.
struct ObservableRecord {
  double theta = 0.0;
  // In [0, 2 pi); NaN when |<X+>| is below kPhaseThreshold.
  double phi = 0.0;
  double x3_mean = 0.0;
  cplx xplus_mean;
  Vec3 j_mean{};
  bool clamped = false;

  bool phi_defined() const { return phi == phi; }
};

inline constexpr double kPhaseThreshold = 1e-13;

// Time-ordered observables; phi_unwrapped removes 2 pi jumps.
struct TimeSeries {
  std::vector<double> times;
  std::vector<ObservableRecord> values;
  std::vector<double> phi_unwrapped;

  int clamp_count() const;
  std::vector<double> theta() const;
};

// Coherent state |z> prepared once at a fixed truncation and evolved under h.
class CoherentEvolution {
 public:
  // j_max = std::nullopt selects the truncation automatically. An explicit
  // j_max is used as given, even if inadequate.
  CoherentEvolution(ComplexDirection z, Hamiltonian h, std::optional<int> j_max = std::nullopt);

  const ComplexDirection& direction() const { return z_; }
  const Hamiltonian& hamiltonian() const { return h_; }
  const RepresentationConfig& config() const { return cfg_; }
  // Normalized initial state.
  const StateVector& initial_state() const { return initial_; }
  double tail_mass() const { return tail_mass_; }

  StateVector state_at(double t) const;
  ObservableRecord observe(double t) const;

 private:
  ComplexDirection z_;
  Hamiltonian h_;
  RepresentationConfig cfg_;
  StateVector initial_;
  double tail_mass_;
};

// theta(t) = arccos(e^{1/4} <X3(t)>), argument clamped into [-1, 1].
double theta_of_t(const ComplexDirection& z, double t, const Hamiltonian& h);
// phi(t) = Arg <X+(t)> in [0, 2 pi). Throws UndefinedPhase.
double phi_of_t(const ComplexDirection& z, double t, const Hamiltonian& h);

// Evaluates the observables at every time; times must be strictly increasing.
TimeSeries sample_series(const CoherentEvolution& evo, std::span<const double> times, int threads = 1);

// samples points from t0 to t1 inclusive; a single sample is {t0}.
std::vector<double> uniform_times(double t0, double t1, int samples);

// Adds or subtracts 2 pi wherever consecutive values jump by more than pi.
std::vector<double> unwrap_phase(std::span<const double> phi);

// (sin theta cos phi, sin theta sin phi, cos theta) at each time. Throws
// UndefinedPhase naming the first offending time.
std::vector<Vec3> trajectory(const ComplexDirection& z, std::span<const double> times,
                             const Hamiltonian& h = FreeHamiltonian{}, int threads = 1);

// Midpoint-in-theta nodes theta_a = (a + 1/2) pi / n_theta, phi_b = 2 pi b / n_phi.
// Weights are Fejer's first rule in cos(theta) times 2 pi / n_phi.
class SphericalGrid {
 public:
  SphericalGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * static_cast<std::size_t>(n_phi_); }
  double theta(int a) const { return thetas_[static_cast<std::size_t>(a)]; }
  double phi(int b) const;
  double weight(int a, int /*b*/) const { return theta_weights_[static_cast<std::size_t>(a)] * phi_step_; }
  Vec3 point(int a, int b) const;
  // Row-major: a * n_phi + b.
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * n_phi_ + b; }

 private:
  int n_theta_;
  int n_phi_;
  double phi_step_;
  std::vector<double> thetas_;
  std::vector<double> theta_weights_;
};

struct DensityField {
  SphericalGrid grid;
  std::vector<double> values;
  double time = 0.0;

  double at(int a, int b) const { return values[grid.index(a, b)]; }
  // Quadrature sum in fixed index order.
  double integral() const;
  double max_value() const;
};

// f_z(x, t) = (4 pi)^{-1/2} sum_j e^{-j(j+1)(1+it)/2} (2j+1) P_j(x.z).
cplx wavefunction(const ComplexDirection& z, const Vec3& x, double t, int j_cut = kAutoCutoff);

DensityField density_free(const ComplexDirection& z, const SphericalGrid& grid, double t, int threads = 1);
DensityField density_rotation(const ComplexDirection& z, const SphericalGrid& grid, const Vec3& omega, double t,
                              int threads = 1);
DensityField density(const ComplexDirection& z, const SphericalGrid& grid, const Hamiltonian& h, double t,
                     int threads = 1);

}  // namespace rotor
