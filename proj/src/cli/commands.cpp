#include "rotor/cli/commands.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <random>

#include "rotor/analysis.hpp"
#include "rotor/cli/output.hpp"
#include "rotor/errors.hpp"
#include "rotor/version.hpp"

namespace rotor::cli {

namespace {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json base_sidecar(const RunConfig& cfg) {
  json j;
  j["version"] = kVersion;
  j["config"] = to_json(cfg);
  return j;
}

json critical_points_json(const std::vector<CriticalPoint>& cps) {
  json arr = json::array();
  for (const auto& c : cps)
    arr.push_back({{"theta_index", c.theta_index},
                   {"phi_index", c.phi_index},
                   {"theta", c.theta},
                   {"phi", c.phi},
                   {"value", c.value},
                   {"kind", std::string(to_string(c.kind))}});
  return arr;
}

void write_density(const DensityField& f, const std::string& path, Format format) {
  const auto& g = f.grid;
  OutputStream out(path);
  if (format == Format::csv) {
    CsvWriter csv(out.stream(), {"theta", "phi", "p"});
    for (int a = 0; a < g.n_theta(); ++a)
      for (int b = 0; b < g.n_phi(); ++b) csv.field(g.theta(a)).field(g.phi(b)).field(f.at(a, b)).end_row();
  } else {
    json j;
    j["time"] = f.time;
    j["n_theta"] = g.n_theta();
    j["n_phi"] = g.n_phi();
    json th = json::array(), ph = json::array();
    for (int a = 0; a < g.n_theta(); ++a) th.push_back(g.theta(a));
    for (int b = 0; b < g.n_phi(); ++b) ph.push_back(g.phi(b));
    j["theta"] = std::move(th);
    j["phi"] = std::move(ph);
    j["p"] = f.values;
    out.stream() << j.dump() << '\n';
  }
  out.finish();
}

// Random state supported on j <= j_max - 2, where the algebra closes exactly.
StateVector random_interior_state(const RepresentationConfig& cfg, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  StateVector s(cfg);
  for (int j = 0; j <= cfg.j_max() - 2; ++j)
    for (int m = -j; m <= j; ++m) s(j, m) = cplx(gauss(rng), gauss(rng));
  return s;
}

double algebra_residual(const RepresentationConfig& cfg, int states, std::uint64_t seed) {
  const BandOperator J[3] = {angular_momentum_operator(cfg, Component::one),
                             angular_momentum_operator(cfg, Component::two),
                             angular_momentum_operator(cfg, Component::three)};
  const BandOperator X[3] = {position_operator(cfg, Component::one), position_operator(cfg, Component::two),
                             position_operator(cfg, Component::three)};
  const cplx I(0.0, 1.0);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  auto rel = [](const StateVector& lhs, const StateVector& rhs, double scale) {
    return scale > 0.0 ? (lhs - rhs).norm() / scale : 0.0;
  };
  for (int n = 0; n < states; ++n) {
    const StateVector s = random_interior_state(cfg, rng);
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, c = (a + 2) % 3;
      const StateVector jj = J[a].apply(J[b].apply(s)) - J[b].apply(J[a].apply(s));
      worst = std::max(worst, rel(jj, I * J[c].apply(s), J[a].apply(J[b].apply(s)).norm() + J[b].apply(J[a].apply(s)).norm()));
      const StateVector jx = J[a].apply(X[b].apply(s)) - X[b].apply(J[a].apply(s));
      worst = std::max(worst, rel(jx, I * X[c].apply(s), J[a].apply(X[b].apply(s)).norm() + X[b].apply(J[a].apply(s)).norm()));
      const StateVector xx = X[a].apply(X[b].apply(s)) - X[b].apply(X[a].apply(s));
      worst = std::max(worst, rel(xx, StateVector(cfg), X[a].apply(X[b].apply(s)).norm() + X[b].apply(X[a].apply(s)).norm()));
    }
  }
  return worst;
}

double casimir_residual(const RepresentationConfig& cfg, int states, std::uint64_t seed) {
  const BandOperator J[3] = {angular_momentum_operator(cfg, Component::one),
                             angular_momentum_operator(cfg, Component::two),
                             angular_momentum_operator(cfg, Component::three)};
  const BandOperator X[3] = {position_operator(cfg, Component::one), position_operator(cfg, Component::two),
                             position_operator(cfg, Component::three)};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 0; n < states; ++n) {
    const StateVector s = random_interior_state(cfg, rng);
    StateVector x2(cfg), jx(cfg);
    double jx_scale = 0.0;
    for (int a = 0; a < 3; ++a) {
      x2 += X[a].apply(X[a].apply(s));
      const StateVector t = J[a].apply(X[a].apply(s));
      jx_scale += t.norm();
      jx += t;
    }
    worst = std::max(worst, (x2 - s).norm() / s.norm());
    if (jx_scale > 0.0) worst = std::max(worst, jx.norm() / jx_scale);
  }
  return worst;
}

double construction_gap(const ComplexDirection& z, const RepresentationConfig& cfg) {
  const StateVector a = coherent_coefficients_unchecked(z, cfg);
  const StateVector b = rotation_oracle(z, cfg);
  const double floor = 1e-12 * a.norm();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i)
    if (std::abs(a[i]) > floor) worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(a[i]));
  return worst;
}

}  // namespace

int cmd_evolve(const RunConfig& cfg, std::ostream& log) {
  const CoherentEvolution evo(cfg.direction(), cfg.hamiltonian_value(), cfg.j_max);
  const auto times = cfg.times();
  const TimeSeries series = sample_series(evo, times, cfg.threads);

  OutputStream out(cfg.output_path);
  if (cfg.format == Format::csv) {
    CsvWriter csv(out.stream(), {"t", "theta", "phi", "phi_unwrapped", "x3_mean", "xplus_re", "xplus_im", "j1_mean",
                                 "j2_mean", "j3_mean", "clamped"});
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto& r = series.values[i];
      csv.field(times[i])
          .field(r.theta)
          .field(r.phi)
          .field(series.phi_unwrapped[i])
          .field(r.x3_mean)
          .field(r.xplus_mean.real())
          .field(r.xplus_mean.imag())
          .field(r.j_mean[0])
          .field(r.j_mean[1])
          .field(r.j_mean[2])
          .field(static_cast<long long>(r.clamped));
      csv.end_row();
    }
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto& r = series.values[i];
      rows.push_back({times[i], r.theta, number_or_null(r.phi), number_or_null(series.phi_unwrapped[i]), r.x3_mean,
                      r.xplus_mean.real(), r.xplus_mean.imag(), r.j_mean[0], r.j_mean[1], r.j_mean[2],
                      static_cast<int>(r.clamped)});
    }
    json j;
    j["columns"] = {"t", "theta", "phi", "phi_unwrapped", "x3_mean", "xplus_re", "xplus_im", "j1_mean", "j2_mean",
                    "j3_mean", "clamped"};
    j["rows"] = std::move(rows);
    out.stream() << j.dump() << '\n';
  }
  out.finish();

  if (series.clamp_count() > 0) log << "theta clamped at " << series.clamp_count() << " samples\n";
  if (cfg.output_path != "-") {
    json side = base_sidecar(cfg);
    side["j_max"] = evo.config().j_max();
    side["tail_mass"] = evo.tail_mass();
    side["rows"] = times.size();
    side["clamp_count"] = series.clamp_count();
    write_json(sidecar_path(cfg.output_path), side);
  }
  return kExitOk;
}

int cmd_density(const RunConfig& cfg, std::ostream& log) {
  const auto z = cfg.direction();
  const auto h = cfg.hamiltonian_value();
  const auto grid = cfg.grid();
  const auto times = cfg.times();
  json fields = json::array();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const DensityField f = density(z, grid, h, times[k], cfg.threads);
    const std::string path = times.size() == 1 ? cfg.output_path : numbered_path(cfg.output_path, k, times.size());
    write_density(f, path, cfg.format);
    const auto cps = find_critical_points(f);
    fields.push_back({{"time", f.time},
                      {"path", path},
                      {"integral", f.integral()},
                      {"max", f.max_value()},
                      {"critical_points", critical_points_json(cps)}});
    log << "t=" << format_double(f.time) << " integral=" << format_double(f.integral()) << " critical points "
        << cps.size() << "\n";
  }
  if (cfg.output_path != "-") {
    json side = base_sidecar(cfg);
    side["fields"] = std::move(fields);
    write_json(sidecar_path(cfg.output_path), side);
  }
  return kExitOk;
}

int cmd_trajectory(const RunConfig& cfg, std::ostream& log) {
  const auto z = cfg.direction();
  const auto h = cfg.hamiltonian_value();
  const auto times = cfg.times();
  std::vector<Vec3> points;
  try {
    points = trajectory(z, times, h, cfg.threads);
  } catch (const UndefinedPhase&) {
    const CoherentEvolution evo(z, h, cfg.j_max);
    const TimeSeries series = sample_series(evo, times, cfg.threads);
    log << "phi undefined at t =";
    for (std::size_t i = 0; i < times.size(); ++i)
      if (!series.values[i].phi_defined()) log << ' ' << format_double(times[i]);
    log << "\n";
    return kExitFailure;
  }

  OutputStream out(cfg.output_path);
  if (cfg.format == Format::csv) {
    CsvWriter csv(out.stream(), {"t", "x", "y", "z"});
    for (std::size_t i = 0; i < times.size(); ++i)
      csv.field(times[i]).field(points[i][0]).field(points[i][1]).field(points[i][2]).end_row();
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) rows.push_back({times[i], points[i][0], points[i][1], points[i][2]});
    json j;
    j["columns"] = {"t", "x", "y", "z"};
    j["rows"] = std::move(rows);
    out.stream() << j.dump() << '\n';
  }
  out.finish();
  if (cfg.output_path != "-") {
    json side = base_sidecar(cfg);
    side["rows"] = times.size();
    write_json(sidecar_path(cfg.output_path), side);
  }
  return kExitOk;
}

std::vector<InvariantResult> verify_suite(const RunConfig& cfg) {
  const auto z = cfg.direction();
  const int j_max = cfg.j_max ? *cfg.j_max : select_j_max(z);
  const RepresentationConfig rep(j_max);
  std::vector<InvariantResult> out;
  auto add = [&](std::string name, double value, double threshold) {
    out.push_back({std::move(name), value, threshold, value <= threshold});
  };

  add("z_eigen_residual", z_eigen_residual(z, rep), 1e-8);
  const StateVector state = normalized_coherent_state(z, rep);
  add("top_shell_mass", top_shell_mass(state), kMaxTopShellMass);

  // The rotation construction is undefined on the degenerate axis z3 = +-1, z != e3.
  try {
    add("construction_equivalence", construction_gap(z, rep), 1e-8);
  } catch (const DegenerateAxis&) {
  }

  const StateVector raw = coherent_coefficients_unchecked(z, rep);
  const double series = std::exp(log_norm_sq(z) - std::log(raw.norm_sq()));
  add("overlap_consistency", std::abs(series - 1.0), 1e-9);

  add("algebra_commutators", algebra_residual(rep, 5, 20240611), 1e-12);
  add("casimirs", casimir_residual(rep, 5, 20240612), 1e-12);

  const Hamiltonian h = cfg.hamiltonian_value();
  add("unitarity", std::abs(evolve(state, h, cfg.t1).norm() - 1.0), 1e-12);
  add("free_recurrence_2pi", (free_evolve(state, 2.0 * std::numbers::pi) - state).norm(), 1e-12);

  const Vec3 omega{0.0, 0.0, cfg.hamiltonian == HamiltonianKind::rotation ? cfg.omega3 : 1.0};
  double coherence = 0.0;
  for (double t : uniform_times(0.0, 4.0 * std::numbers::pi, 9))
    coherence = std::max(coherence, z_eigen_residual(rotation_evolve(state, omega, t), z_of_t(z, omega, t)));
  add("rotation_coherence", coherence, 1e-8);

  const DensityField f = density(z, SphericalGrid(64, 128), h, cfg.t0, cfg.threads);
  add("density_integral", std::abs(f.integral() - 1.0), 1e-6);
  return out;
}

json verify_report(const RunConfig& cfg, const std::vector<InvariantResult>& results) {
  json j = base_sidecar(cfg);
  j["j_max"] = cfg.j_max ? *cfg.j_max : select_j_max(cfg.direction());
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"name", r.name}, {"value", number_or_null(r.value)}, {"threshold", r.threshold}, {"pass", r.pass}});
    all = all && r.pass;
  }
  j["invariants"] = std::move(arr);
  j["pass"] = all;
  return j;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const auto results = verify_suite(cfg);
  const json report = verify_report(cfg, results);
  write_json(cfg.output_path, report);
  for (const auto& r : results)
    if (!r.pass) log << "FAIL " << r.name << ": " << format_double(r.value) << " > " << format_double(r.threshold) << "\n";
  return report["pass"].get<bool>() ? kExitOk : kExitFailure;
}

int run(const RunConfig& cfg, std::ostream& log) {
  try {
    switch (cfg.mode) {
      case Mode::evolve:
        return cmd_evolve(cfg, log);
      case Mode::density:
        return cmd_density(cfg, log);
      case Mode::trajectory:
        return cmd_trajectory(cfg, log);
      default:
        return cmd_verify(cfg, log);
    }
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    log << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& log) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_arguments(argc, argv);
  } catch (const std::exception& e) {
    log << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, log);
}

}  // namespace rotor::cli
