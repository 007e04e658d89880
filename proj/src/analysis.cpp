#include "rotor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotor/errors.hpp"

namespace rotor {

namespace {

struct Extremum {
  std::size_t index;
  double t;
  double value;
};

// Vertex of the parabola through (i-1, i, i+1); falls back to the sample.
Extremum refine(std::span<const double> t, std::span<const double> v, std::size_t i) {
  if (i == 0 || i + 1 >= v.size()) return {i, t[i], v[i]};
  const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom == 0.0) return {i, t[i], y1};
  const double off = 0.5 * (y0 - y2) / denom;
  if (std::abs(off) > 1.0) return {i, t[i], y1};
  const double h = off >= 0.0 ? t[i + 1] - t[i] : t[i] - t[i - 1];
  return {i, t[i] + off * h, y1 - 0.25 * (y0 - y2) * off};
}

double interpolate(const std::vector<Extremum>& nodes, double t) {
  if (nodes.empty()) return 0.0;
  if (t <= nodes.front().t) return nodes.front().value;
  if (t >= nodes.back().t) return nodes.back().value;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t, [](double x, const Extremum& e) { return x < e.t; });
  const Extremum& hi = *it;
  const Extremum& lo = *(it - 1);
  if (hi.t == lo.t) return lo.value;
  return lo.value + (hi.value - lo.value) * (t - lo.t) / (hi.t - lo.t);
}

}  // namespace

BeatReport beat_envelope(std::span<const double> times, std::span<const double> values, double center) {
  if (times.size() != values.size()) throw InvalidArgument("beat_envelope: times and values differ in length");
  const std::size_t n = values.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = values[i] - center;

  std::vector<Extremum> maxima, minima, all;
  std::vector<bool> is_upper;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool is_max = d[i] > d[i - 1] && d[i] >= d[i + 1];
    const bool is_min = d[i] < d[i - 1] && d[i] <= d[i + 1];
    if (!is_max && !is_min) continue;
    const Extremum e = refine(times, d, i);
    all.push_back(e);
    is_upper.push_back(is_max);
    (is_max ? maxima : minima).push_back(e);
  }
  for (std::size_t k = 1; k < all.size(); ++k)
    if (all[k].index - all[k - 1].index < 4) throw CoarseSampling("beat_envelope: extrema closer than 4 samples");

  BeatReport report;
  if (maxima.empty() || minima.empty()) return report;

  // Half peak-to-peak amplitude at every extremum.
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& other = is_upper[k] ? minima : maxima;
    report.envelope_times.push_back(all[k].t);
    report.envelope_values.push_back(0.5 * std::abs(all[k].value - interpolate(other, all[k].t)));
  }

  const auto& et = report.envelope_times;
  const auto& ev = report.envelope_values;
  const std::size_t m = ev.size();
  if (m < 3) return report;
  const auto [lo_it, hi_it] = std::minmax_element(ev.begin(), ev.end());
  const double range = *hi_it - *lo_it;
  if (!(range > 0.0)) return report;
  const double prominence = 0.25 * range;

  for (std::size_t k = 1; k + 1 < m; ++k) {
    if (!(ev[k] < ev[k - 1] && ev[k] <= ev[k + 1])) continue;
    // Walk outwards until the envelope rises by `prominence` or dips lower.
    auto side_ok = [&](int step) {
      for (long i = static_cast<long>(k) + step; i >= 0 && i < static_cast<long>(m); i += step) {
        if (ev[static_cast<std::size_t>(i)] < ev[k]) return false;
        if (ev[static_cast<std::size_t>(i)] - ev[k] >= prominence) return true;
      }
      return false;
    };
    if (!side_ok(-1) || !side_ok(+1)) continue;
    // Parabolic vertex through the neighbouring envelope nodes.
    const double t0 = et[k - 1], t1 = et[k], t2 = et[k + 1];
    const double y0 = ev[k - 1], y1 = ev[k], y2 = ev[k + 1];
    const double denom = (t0 - t1) * (t0 - t2) * (t1 - t2);
    double tmin = t1;
    if (denom != 0.0) {
      const double a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom;
      const double b = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom;
      if (a > 0.0) tmin = std::clamp(-b / (2.0 * a), t0, t2);
    }
    report.minima_times.push_back(tmin);
  }

  if (report.minima_times.size() >= 2) {
    report.degenerate = false;
    report.beat_period_estimate = (report.minima_times.back() - report.minima_times.front()) /
                                  static_cast<double>(report.minima_times.size() - 1);
  }
  return report;
}

BeatReport beat_envelope(const TimeSeries& series, double center) {
  const auto theta = series.theta();
  BeatReport r = beat_envelope(series.times, theta, center);
  r.clamp_count = series.clamp_count();
  return r;
}

// ---------------------------------------------------------------------------

std::string_view to_string(TStarEvent e) { return e == TStarEvent::pulse ? "pulse" : "oscillation"; }

TStarEvent classify_t_star_event(std::span<const double> times, std::span<const double> phi_u, double t_star,
                                 double window) {
  if (times.size() != phi_u.size() || times.empty()) throw InvalidArgument("classify: malformed series");
  const double two_pi = 2.0 * std::numbers::pi;
  const double half = 0.5 * window;

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t_star) <= window && phi_u[i] == phi_u[i]) idx.push_back(i);
  if (idx.size() < 40) throw CoarseSampling("classify: window covers fewer than 40 samples");

  // Least-squares line on the outer ring, in coordinates centred at t_star.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (std::size_t i : idx) {
    const double x = times[i] - t_star;
    if (std::abs(x) <= half) continue;
    sx += x;
    sy += phi_u[i];
    sxx += x * x;
    sxy += x * phi_u[i];
    cnt += 1;
  }
  if (cnt < 4) throw CoarseSampling("classify: outer ring too sparse for a trend fit");
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / cnt;
  auto residual = [&](std::size_t i) { return phi_u[i] - (intercept + slope * (times[i] - t_star)); };

  // Noise floor from second differences on the outer ring (white noise: var 6 sigma^2).
  double nsum = 0;
  int ncount = 0;
  for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
    if (std::abs(times[idx[k]] - t_star) <= half) continue;
    if (idx[k + 1] != idx[k] + 1 || idx[k - 1] + 1 != idx[k]) continue;
    const double dd = residual(idx[k + 1]) - 2.0 * residual(idx[k]) + residual(idx[k - 1]);
    nsum += dd * dd;
    ++ncount;
  }
  const double noise = ncount > 0 ? std::sqrt(nsum / ncount / 6.0) : 0.0;

  std::vector<std::size_t> inner;
  for (std::size_t i : idx)
    if (std::abs(times[i] - t_star) <= half) inner.push_back(i);
  double amplitude = 0.0;
  for (std::size_t i : inner) amplitude = std::max(amplitude, std::abs(residual(i)));
  if (inner.size() < 3 || amplitude < std::max(5.0 * noise, 1e-9))
    throw IndeterminateClassification("classify: no phase event above the noise floor");

  // Chart tooth of every inner sample.
  const double phi0 = phi_u[0];
  auto tooth = [&](std::size_t i) { return std::floor((phi_u[i] - phi0) / two_pi); };

  // Steepest residual interval marks the event.
  std::size_t ev = 0;
  double best = -1.0;
  for (std::size_t k = 0; k + 1 < inner.size(); ++k) {
    const double step = std::abs(residual(inner[k + 1]) - residual(inner[k]));
    if (step > best) {
      best = step;
      ev = k;
    }
  }

  auto count_alternations = [&](std::size_t from, std::size_t to) {
    // Inclusive range of positions in `inner`.
    std::vector<double> kept;
    for (std::size_t k = from + 1; k < to; ++k) {
      const double r0 = residual(inner[k - 1]), r1 = residual(inner[k]), r2 = residual(inner[k + 1]);
      const bool ext = (r1 > r0 && r1 >= r2) || (r1 < r0 && r1 <= r2);
      if (ext && std::abs(r1) * 3.0 >= amplitude) kept.push_back(r1);
    }
    int lobes = 0;
    double last_sign = 0.0;
    for (double r : kept) {
      const double s = r > 0 ? 1.0 : -1.0;
      if (s != last_sign) ++lobes;
      last_sign = s;
    }
    return lobes;
  };
  auto extent = [&](std::size_t k) {
    std::size_t lo = k, hi = k;
    while (lo > 0 && tooth(inner[lo - 1]) == tooth(inner[k])) --lo;
    while (hi + 1 < inner.size() && tooth(inner[hi + 1]) == tooth(inner[k])) ++hi;
    return std::pair{lo, hi};
  };

  int lobes = 0;
  if (tooth(inner[ev]) == tooth(inner[ev + 1])) {
    const auto [lo, hi] = extent(ev);
    lobes = count_alternations(lo, hi);
  } else {
    const auto [l0, l1] = extent(ev);
    const auto [r0, r1] = extent(ev + 1);
    lobes = std::max(count_alternations(l0, l1), count_alternations(r0, r1));
  }
  if (lobes == 0) throw IndeterminateClassification("classify: no dominant excursion in the event tooth");
  return lobes >= 2 ? TStarEvent::oscillation : TStarEvent::pulse;
}

TStarEvent classify_t_star_event(const TimeSeries& series, double t_star, double window) {
  return classify_t_star_event(series.times, series.phi_unwrapped, t_star, window);
}

// ---------------------------------------------------------------------------

std::string_view to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::maximum:
      return "maximum";
    case CriticalKind::minimum:
      return "minimum";
    default:
      return "saddle";
  }
}

std::vector<CriticalPoint> find_critical_points(const DensityField& field, double threshold_fraction) {
  const auto& g = field.grid;
  const int nt = g.n_theta(), np = g.n_phi();
  const double threshold = threshold_fraction * field.max_value();
  const bool pole_ok = np % 2 == 0;

  // Value at (a, b) with phi wraparound and reflection across the poles.
  auto value = [&](int a, int b) {
    if (a < 0) {
      a = -1 - a;
      b += np / 2;
    } else if (a >= nt) {
      a = 2 * nt - 1 - a;
      b += np / 2;
    }
    b = ((b % np) + np) % np;
    return field.at(a, b);
  };

  std::vector<CriticalPoint> out;
  for (int a = 0; a < nt; ++a) {
    if (!pole_ok && (a == 0 || a == nt - 1)) continue;
    for (int b = 0; b < np; ++b) {
      const double f0 = field.at(a, b);
      if (f0 < threshold) continue;
      // Crossing a pole reverses the phi direction; a row-local sign flips.
      const int dn = a == 0 ? -1 : 1;
      const int ds = a == nt - 1 ? -1 : 1;
      const double ring[8] = {value(a - 1, b),      value(a - 1, b + dn), value(a, b + 1),      value(a + 1, b + ds),
                              value(a + 1, b),      value(a + 1, b - ds), value(a, b - 1),      value(a - 1, b - dn)};
      bool all_lower = true, all_higher = true;
      for (double v : ring) {
        all_lower = all_lower && v < f0;
        all_higher = all_higher && v > f0;
      }
      const double ftt = ring[0] + ring[4] - 2.0 * f0;
      const double fpp = ring[2] + ring[6] - 2.0 * f0;
      const double ftp = 0.25 * (ring[3] - ring[5] - ring[1] + ring[7]);
      const double det = ftt * fpp - ftp * ftp;

      CriticalPoint cp{a, b, g.theta(a), g.phi(b), f0, CriticalKind::maximum};
      if (all_lower) {
        out.push_back(cp);
        continue;
      }
      if (all_higher) {
        cp.kind = CriticalKind::minimum;
        out.push_back(cp);
        continue;
      }
      int changes = 0;
      for (int k = 0; k < 8; ++k) {
        const bool s0 = ring[k] > f0;
        const bool s1 = ring[(k + 1) % 8] > f0;
        if (s0 != s1) ++changes;
      }
      if (changes >= 4 && det < 0.0) {
        cp.kind = CriticalKind::saddle;
        out.push_back(cp);
      }
    }
  }
  return out;
}

std::vector<std::vector<CriticalPoint>> cluster_critical_points(std::span<const CriticalPoint> points,
                                                                const SphericalGrid& grid) {
  const int np = grid.n_phi();
  auto adjacent = [&](const CriticalPoint& p, const CriticalPoint& q) {
    if (p.kind != q.kind || std::abs(p.theta_index - q.theta_index) > 2) return false;
    const int db = std::abs(p.phi_index - q.phi_index) % np;
    return std::min(db, np - db) <= 2;
  };
  // Union-find over the (small) point list.
  std::vector<std::size_t> parent(points.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = i + 1; k < points.size(); ++k)
      if (adjacent(points[i], points[k])) parent[root(k)] = root(i);

  std::vector<std::vector<CriticalPoint>> clusters;
  std::vector<std::size_t> slot(points.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t r = root(i);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[r]].push_back(points[i]);
  }
  return clusters;
}

double periodicity_check(const std::function<std::vector<double>(double)>& producer, double period, int samples) {
  if (samples < 3) throw InvalidArgument("periodicity_check: need at least 3 samples");
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = period * k / samples;
    const auto a = producer(t);
    const auto b = producer(t + period);
    if (a.size() != b.size()) throw DimensionError("periodicity_check: producer changed output size");
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace rotor
