#include "rotor/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string_view>

#include "CLI11.hpp"
#include "rotor/coherent.hpp"
#include "rotor/version.hpp"

namespace rotor::cli {

namespace {

template <class E>
E parse_enum(std::string_view s, std::initializer_list<std::pair<std::string_view, E>> table, const char* what) {
  for (const auto& [name, value] : table)
    if (name == s) return value;
  throw UsageError(std::string("unknown ") + what + ": " + std::string(s));
}

Mode parse_mode(std::string_view s) {
  return parse_enum<Mode>(s,
                          {{"evolve", Mode::evolve},
                           {"density", Mode::density},
                           {"trajectory", Mode::trajectory},
                           {"verify", Mode::verify}},
                          "mode");
}

HamiltonianKind parse_hamiltonian(std::string_view s) {
  return parse_enum<HamiltonianKind>(s, {{"free", HamiltonianKind::free}, {"rotation", HamiltonianKind::rotation}},
                                     "hamiltonian");
}

Format parse_format(std::string_view s) {
  return parse_enum<Format>(s, {{"csv", Format::csv}, {"json", Format::json}}, "format");
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError(std::string("bad ") + what + ": " + std::string(s));
  return v;
}

std::optional<int> parse_jmax(std::string_view s) {
  if (s == "auto") return std::nullopt;
  return parse_int(s, "--jmax");
}

std::pair<int, int> parse_grid(std::string_view s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string_view::npos) throw UsageError("--grid expects NTHETAxNPHI, got " + std::string(s));
  return {parse_int(s.substr(0, x), "--grid"), parse_int(s.substr(x + 1), "--grid")};
}

std::string grid_string(const RunConfig& c) {
  return std::to_string(c.grid_theta) + "x" + std::to_string(c.grid_phi);
}

// Looks for --config before the main parse so the file can seed defaults.
std::optional<std::string> find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argc) throw UsageError("--config needs a path");
      return std::string(argv[i + 1]);
    }
    if (a.starts_with("--config=")) return std::string(a.substr(9));
  }
  return std::nullopt;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (j.contains("config")) j = j.at("config");
  return config_from_json(j);
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::evolve:
      return "evolve";
    case Mode::density:
      return "density";
    case Mode::trajectory:
      return "trajectory";
    default:
      return "verify";
  }
}

std::string to_string(HamiltonianKind h) { return h == HamiltonianKind::free ? "free" : "rotation"; }
std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

void RunConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(theta_bar) || !finite(phi_bar) || !finite(l3) || !finite(l_norm) || !finite(omega3) || !finite(t0) ||
      !finite(t1))
    throw UsageError("all real parameters must be finite");
  if (l_norm < 0.0) throw UsageError("l_norm must be nonnegative");
  if (std::abs(l3) > l_norm) throw UsageError("need l_norm >= |l3|");
  const bool single = samples == 1 && (mode == Mode::density || mode == Mode::trajectory);
  if (samples < 2 && !single) throw UsageError("samples must be >= 2");
  if (single ? !(t1 >= t0) : !(t1 > t0)) throw UsageError("need t1 > t0");
  if (grid_theta < 16 || grid_phi < 16) throw UsageError("grid dimensions must be >= 16");
  if (j_max && (*j_max < 2 || *j_max > kMaxJMax))
    throw UsageError("jmax must lie in [2, " + std::to_string(kMaxJMax) + "]");
  if (threads < 1) throw UsageError("threads must be >= 1");
  if (mode == Mode::density && samples > 1 && output_path == "-")
    throw UsageError("density with several times needs --out");
}

double RunConfig::alpha() const {
  if (l_norm == 0.0) return 0.0;
  return std::acos(std::clamp(l3 / l_norm, -1.0, 1.0));
}

ComplexDirection RunConfig::direction() const { return z_from_angles(theta_bar, phi_bar, l_norm, alpha()); }

Hamiltonian RunConfig::hamiltonian_value() const {
  if (hamiltonian == HamiltonianKind::free) return FreeHamiltonian{};
  return RotationHamiltonian{Vec3{0.0, 0.0, omega3}};
}

std::vector<double> RunConfig::times() const {
  if (samples == 1) return {t0};
  return uniform_times(t0, t1, samples);
}

SphericalGrid RunConfig::grid() const { return SphericalGrid(grid_theta, grid_phi); }

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["mode"] = to_string(c.mode);
  j["theta_bar"] = c.theta_bar;
  j["phi_bar"] = c.phi_bar;
  j["l3"] = c.l3;
  j["l_norm"] = c.l_norm;
  j["hamiltonian"] = to_string(c.hamiltonian);
  j["omega3"] = c.omega3;
  j["t0"] = c.t0;
  j["t1"] = c.t1;
  j["samples"] = c.samples;
  j["grid"] = grid_string(c);
  if (c.j_max)
    j["j_max"] = *c.j_max;
  else
    j["j_max"] = "auto";
  j["output_path"] = c.output_path;
  j["format"] = to_string(c.format);
  j["threads"] = c.threads;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("theta_bar")) c.theta_bar = j.at("theta_bar").get<double>();
    if (j.contains("phi_bar")) c.phi_bar = j.at("phi_bar").get<double>();
    if (j.contains("l3")) c.l3 = j.at("l3").get<double>();
    if (j.contains("l_norm")) c.l_norm = j.at("l_norm").get<double>();
    if (j.contains("hamiltonian")) c.hamiltonian = parse_hamiltonian(j.at("hamiltonian").get<std::string>());
    if (j.contains("omega3")) c.omega3 = j.at("omega3").get<double>();
    if (j.contains("t0")) c.t0 = j.at("t0").get<double>();
    if (j.contains("t1")) c.t1 = j.at("t1").get<double>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("grid")) std::tie(c.grid_theta, c.grid_phi) = parse_grid(j.at("grid").get<std::string>());
    if (j.contains("j_max")) {
      const auto& v = j.at("j_max");
      c.j_max = v.is_string() ? parse_jmax(v.get<std::string>()) : std::optional<int>(v.get<int>());
    }
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

std::optional<RunConfig> parse_arguments(int argc, const char* const* argv) {
  RunConfig cfg;
  if (const auto path = find_config_path(argc, argv)) cfg = load_config_file(*path);

  CLI::App app{"Coherent states of the quantum rigid rotor: evolution, densities, trajectories."};
  app.set_version_flag("--version", std::string(rotor::kVersion));

  std::string mode = to_string(cfg.mode);
  std::string hamiltonian = to_string(cfg.hamiltonian);
  std::string format = to_string(cfg.format);
  std::string grid = grid_string(cfg);
  std::string jmax = cfg.j_max ? std::to_string(*cfg.j_max) : "auto";
  std::string config_path;
  int j = 0;

  app.add_option("--config", config_path, "JSON config or sidecar to start from");
  app.add_option("--mode", mode, "evolve | density | trajectory | verify")->capture_default_str();
  auto* j_opt = app.add_option("--j", j, "standard family: l3 = j, |l| = sqrt(j(j+1))");
  auto* l3_opt = app.add_option("--l3", cfg.l3, "l3 component")->capture_default_str();
  auto* ln_opt = app.add_option("--l-norm", cfg.l_norm, "|l|")->capture_default_str();
  j_opt->excludes(l3_opt)->excludes(ln_opt);
  app.add_option("--theta-bar", cfg.theta_bar, "polar angle of the mean position")->capture_default_str();
  app.add_option("--phi-bar", cfg.phi_bar, "azimuth of the mean position")->capture_default_str();
  app.add_option("--hamiltonian", hamiltonian, "free | rotation")->capture_default_str();
  app.add_option("--omega3", cfg.omega3, "rotation rate about e3")->capture_default_str();
  app.add_option("--t0", cfg.t0, "first time")->capture_default_str();
  app.add_option("--t1", cfg.t1, "last time")->capture_default_str();
  app.add_option("--samples", cfg.samples, "number of time samples")->capture_default_str();
  app.add_option("--grid", grid, "density grid NTHETAxNPHI")->capture_default_str();
  app.add_option("--jmax", jmax, "truncation: auto or an integer")->capture_default_str();
  app.add_option("--out", cfg.output_path, "output path, - for stdout")->capture_default_str();
  app.add_option("--format", format, "csv | json")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    std::cout << std::string(rotor::kVersion) << "\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.mode = parse_mode(mode);
  cfg.hamiltonian = parse_hamiltonian(hamiltonian);
  cfg.format = parse_format(format);
  std::tie(cfg.grid_theta, cfg.grid_phi) = parse_grid(grid);
  cfg.j_max = parse_jmax(jmax);
  if (j_opt->count() > 0) {
    if (j < 0) throw UsageError("--j must be nonnegative");
    cfg.l3 = j;
    cfg.l_norm = std::sqrt(static_cast<double>(j) * (j + 1));
  }
  cfg.validate();
  return cfg;
}

}  // namespace rotor::cli
