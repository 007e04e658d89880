#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotor/dynamics.hpp"

namespace rotor::cli {

enum class Mode { evolve, density, trajectory, verify };
enum class HamiltonianKind { free, rotation };
enum class Format { csv, json };

struct RunConfig {
  Mode mode = Mode::evolve;
  double theta_bar = 1.5707963267948966;
  double phi_bar = 0.0;
  double l3 = 11.0;
  double l_norm = 11.489125293076057;
  HamiltonianKind hamiltonian = HamiltonianKind::free;
  double omega3 = 1.0;
  double t0 = 0.0;
  double t1 = 25.132741228718345;
  int samples = 2000;
  int grid_theta = 128;
  int grid_phi = 256;
  std::optional<int> j_max;  // nullopt = auto
  std::string output_path = "-";
  Format format = Format::csv;
  int threads = 1;

  // Throws UsageError when an invariant is violated.
  void validate() const;

  // arccos(l3 / |l|), 0 when |l| = 0.
  double alpha() const;
  ComplexDirection direction() const;
  Hamiltonian hamiltonian_value() const;
  std::vector<double> times() const;
  SphericalGrid grid() const;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_string(Mode m);
std::string to_string(HamiltonianKind h);
std::string to_string(Format f);

nlohmann::json to_json(const RunConfig& cfg);
// Accepts the object written by to_json; missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);

// Parses command-line flags. A `--config FILE` flag loads a JSON config (a
// sidecar's "config" object or a bare config) as the base; other flags
// override it. Throws UsageError. Returns nullopt after printing help.
std::optional<RunConfig> parse_arguments(int argc, const char* const* argv);

}  // namespace rotor::cli
