#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rotor/dynamics.hpp"

namespace rotor {

struct BeatReport {
  std::vector<double> envelope_times;
  std::vector<double> envelope_values;
  std::vector<double> minima_times;
  // Mean spacing of consecutive minima; 0 when degenerate.
  double beat_period_estimate = 0.0;
  // Fewer than two minima were found.
  bool degenerate = true;
  int clamp_count = 0;
};

// Amplitude envelope of an oscillation around `center`.
//
// Local maxima and minima of v - center are located (refined by a parabola
// through three samples); the envelope at each extremum is half the
// peak-to-peak distance to the opposite-side envelope, linearly interpolated.
// Envelope minima are its local minima whose prominence on both sides is at
// least a quarter of the envelope range. Throws CoarseSampling when two
// consecutive extrema are fewer than 4 samples apart.
BeatReport beat_envelope(std::span<const double> times, std::span<const double> values, double center);
// theta(t) channel of a series.
BeatReport beat_envelope(const TimeSeries& series, double center);

enum class TStarEvent { pulse, oscillation };
std::string_view to_string(TStarEvent e);

// Pulse/oscillation classification of phi near t_star.
//
// A linear trend is fitted to the unwrapped phase on the outer ring
// window/2 < |t - t_star| <= window and subtracted. The residual in the inner
// window is split into teeth of the [phi0, phi0 + 2 pi) chart, phi0 being the
// first sample of the series, i.e. the displayed mod-2pi graph. In the
// tooth (or the two teeth, when the chart wraps inside the steepest
// interval) holding the event, residual extrema within a factor 3 of the
// largest are counted: two or more alternating ones make an oscillation, a
// single one a pulse.
//
// Throws CoarseSampling if the window holds fewer than 40 samples and
// IndeterminateClassification if the residual is below 5x the noise floor.
TStarEvent classify_t_star_event(const TimeSeries& series, double t_star, double window);
// Same on raw arrays: times, phi in the chart, unwrapped phi.
TStarEvent classify_t_star_event(std::span<const double> times, std::span<const double> phi_unwrapped,
                                 double t_star, double window);

enum class CriticalKind { maximum, minimum, saddle };
std::string_view to_string(CriticalKind k);

struct CriticalPoint {
  int theta_index = 0;
  int phi_index = 0;
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
  CriticalKind kind = CriticalKind::maximum;
};

// Nodes that beat all 8 neighbours (extrema) or whose neighbour ring changes
// sign at least four times with a negative discrete Hessian determinant
// (saddles). phi wraps around; rows next to a pole see the node across the
// pole. Nodes below threshold_fraction * max are skipped.
std::vector<CriticalPoint> find_critical_points(const DensityField& field, double threshold_fraction = 0.1);

// Groups same-kind points chained by steps of at most two nodes in theta and
// phi (phi wraps). A tilted peak between nodes can leave two maxima a
// knight's move apart.
std::vector<std::vector<CriticalPoint>> cluster_critical_points(std::span<const CriticalPoint> points,
                                                                const SphericalGrid& grid);

// max over t_k = k period / samples of sup |producer(t_k) - producer(t_k + period)|.
double periodicity_check(const std::function<std::vector<double>(double)>& producer, double period, int samples);

}  // namespace rotor
