#include "rotor/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "rotor/errors.hpp"

namespace rotor {

RepresentationConfig::RepresentationConfig(int j_max) : j_max_(j_max) {
  if (j_max < 2) throw InvalidArgument("j_max must be at least 2, got " + std::to_string(j_max));
}

std::size_t RepresentationConfig::dimension() const {
  const auto n = static_cast<std::size_t>(j_max_) + 1;
  return n * n;
}

BasisIndex RepresentationConfig::basis_index(std::size_t offset) {
  int j = static_cast<int>(std::sqrt(static_cast<double>(offset)));
  while (static_cast<std::size_t>(j * j) > offset) --j;
  while (static_cast<std::size_t>((j + 1) * (j + 1)) <= offset) ++j;
  return {j, static_cast<int>(offset) - j * j - j};
}

// ---------------------------------------------------------------------------

StateVector::StateVector(RepresentationConfig cfg) : cfg_(cfg), c_(cfg.dimension()) {}

StateVector::StateVector(RepresentationConfig cfg, std::vector<cplx> coefficients)
    : cfg_(cfg), c_(std::move(coefficients)) {
  if (c_.size() != cfg_.dimension()) throw DimensionError("coefficient count does not match (j_max+1)^2");
}

StateVector StateVector::basis(RepresentationConfig cfg, int j, int m) {
  if (!cfg.contains(j, m)) throw InvalidArgument("basis index outside representation");
  StateVector s(cfg);
  s(j, m) = 1.0;
  return s;
}

double StateVector::norm_sq() const {
  double acc = 0.0;
  for (const auto& v : c_) acc += std::norm(v);
  return acc;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

double StateVector::shell_mass(int j) const {
  double acc = 0.0;
  for (int m = -j; m <= j; ++m) acc += std::norm((*this)(j, m));
  return acc;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (!(cfg_ == other.cfg_)) throw DimensionError("state configs differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  if (!(cfg_ == other.cfg_)) throw DimensionError("state configs differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

StateVector& StateVector::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.config() == b.config())) throw DimensionError("inner product of states with different j_max");
  cplx acc = 0.0;
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  for (std::size_t i = 0; i < ca.size(); ++i) acc += std::conj(ca[i]) * cb[i];
  return acc;
}

// ---------------------------------------------------------------------------

BandOperator::BandOperator(RepresentationConfig cfg, std::span<const BandEntry> entries) : cfg_(cfg) {
  struct Flat {
    std::size_t row, col;
    cplx value;
  };
  std::vector<Flat> flat;
  flat.reserve(entries.size());
  for (const auto& e : entries) {
    if (!cfg.contains(e.row.j, e.row.m) || !cfg.contains(e.col.j, e.col.m))
      throw InvalidArgument("band entry outside representation");
    if (std::abs(e.row.j - e.col.j) > 1 || std::abs(e.row.m - e.col.m) > 1)
      throw InvalidArgument("band entry violates |j-j'| <= 1, |m-m'| <= 1");
    flat.push_back({RepresentationConfig::index(e.row.j, e.row.m), RepresentationConfig::index(e.col.j, e.col.m),
                    e.value});
  }
  std::sort(flat.begin(), flat.end(),
            [](const Flat& a, const Flat& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  const std::size_t dim = cfg.dimension();
  row_start_.assign(dim + 1, 0);
  for (std::size_t k = 0; k < flat.size(); ++k) {
    if (!slots_.empty() && k > 0 && flat[k - 1].row == flat[k].row && flat[k - 1].col == flat[k].col) {
      slots_.back().value += flat[k].value;
      continue;
    }
    slots_.push_back({flat[k].col, flat[k].value});
    ++row_start_[flat[k].row + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) row_start_[r + 1] += row_start_[r];
}

StateVector BandOperator::apply(const StateVector& s) const {
  if (!(s.config() == cfg_)) throw DimensionError("operator and state configs differ");
  StateVector out(cfg_);
  const auto in = s.coefficients();
  auto dst = out.coefficients();
  for (std::size_t r = 0; r + 1 < row_start_.size(); ++r) {
    cplx acc = 0.0;
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) acc += slots_[k].value * in[slots_[k].col];
    dst[r] = acc;
  }
  return out;
}

cplx BandOperator::element(BasisIndex row, BasisIndex col) const {
  if (!cfg_.contains(row.j, row.m) || !cfg_.contains(col.j, col.m)) return 0.0;
  const std::size_t r = RepresentationConfig::index(row.j, row.m);
  const std::size_t c = RepresentationConfig::index(col.j, col.m);
  for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
    if (slots_[k].col == c) return slots_[k].value;
  return 0.0;
}

std::vector<BandEntry> BandOperator::entries() const {
  std::vector<BandEntry> out;
  out.reserve(slots_.size());
  for (std::size_t r = 0; r + 1 < row_start_.size(); ++r)
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
      out.push_back({RepresentationConfig::basis_index(r), RepresentationConfig::basis_index(slots_[k].col),
                     slots_[k].value});
  return out;
}

BandOperator BandOperator::operator+(const BandOperator& other) const {
  if (!(cfg_ == other.cfg_)) throw DimensionError("operator configs differ");
  auto all = entries();
  auto more = other.entries();
  all.insert(all.end(), more.begin(), more.end());
  return BandOperator(cfg_, all);
}

BandOperator BandOperator::operator-(const BandOperator& other) const { return *this + other * -1.0; }

BandOperator BandOperator::operator*(cplx s) const {
  auto all = entries();
  for (auto& e : all) e.value *= s;
  return BandOperator(cfg_, all);
}

BandOperator BandOperator::adjoint() const {
  auto all = entries();
  for (auto& e : all) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return BandOperator(cfg_, all);
}

// ---------------------------------------------------------------------------

namespace {

int sgn(Sign s) { return s == Sign::plus ? 1 : -1; }

double safe_sqrt(double v) { return v > 0.0 ? std::sqrt(v) : 0.0; }

}  // namespace

double jpm_amplitude(Sign sign, int j, int m) {
  const int s = sgn(sign);
  return safe_sqrt(static_cast<double>(j - s * m) * (j + s * m + 1));
}

double x3_raise_amplitude(int j, int m) {
  return safe_sqrt(static_cast<double>(j - m + 1) * (j + m + 1)) / std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
}

double x3_lower_amplitude(int j, int m) {
  if (j == 0) return 0.0;
  return safe_sqrt(static_cast<double>(j - m) * (j + m)) / std::sqrt((2.0 * j - 1.0) * (2.0 * j + 1.0));
}

double xpm_raise_amplitude(Sign sign, int j, int m) {
  const int s = sgn(sign);
  return -s * safe_sqrt(static_cast<double>(j + s * m + 1) * (j + s * m + 2)) /
         std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
}

double xpm_lower_amplitude(Sign sign, int j, int m) {
  if (j == 0) return 0.0;
  const int s = sgn(sign);
  return s * safe_sqrt(static_cast<double>(j - s * m - 1) * (j - s * m)) /
         std::sqrt((2.0 * j - 1.0) * (2.0 * j + 1.0));
}

StateVector apply_j3(const StateVector& s) {
  StateVector out(s.config());
  const int jm = s.config().j_max();
  for (int j = 0; j <= jm; ++j)
    for (int m = -j; m <= j; ++m) out(j, m) = static_cast<double>(m) * s(j, m);
  return out;
}

StateVector apply_jpm(const StateVector& s, Sign sign) {
  StateVector out(s.config());
  const int jm = s.config().j_max();
  const int d = sgn(sign);
  for (int j = 0; j <= jm; ++j)
    for (int m = -j; m <= j; ++m) {
      if (std::abs(m + d) > j) continue;
      out(j, m + d) += jpm_amplitude(sign, j, m) * s(j, m);
    }
  return out;
}

StateVector apply_x3(const StateVector& s) {
  StateVector out(s.config());
  const int jm = s.config().j_max();
  for (int j = 0; j <= jm; ++j)
    for (int m = -j; m <= j; ++m) {
      const cplx v = s(j, m);
      if (v == 0.0) continue;
      if (j < jm) out(j + 1, m) += x3_raise_amplitude(j, m) * v;
      if (j > 0 && std::abs(m) <= j - 1) out(j - 1, m) += x3_lower_amplitude(j, m) * v;
    }
  return out;
}

StateVector apply_xpm(const StateVector& s, Sign sign) {
  StateVector out(s.config());
  const int jm = s.config().j_max();
  const int d = sgn(sign);
  for (int j = 0; j <= jm; ++j)
    for (int m = -j; m <= j; ++m) {
      const cplx v = s(j, m);
      if (v == 0.0) continue;
      if (j < jm) out(j + 1, m + d) += xpm_raise_amplitude(sign, j, m) * v;
      if (j > 0 && std::abs(m + d) <= j - 1) out(j - 1, m + d) += xpm_lower_amplitude(sign, j, m) * v;
    }
  return out;
}

namespace {

std::vector<BandEntry> ladder_entries(const RepresentationConfig& cfg, Sign sign) {
  std::vector<BandEntry> e;
  const int d = sgn(sign);
  for (int j = 0; j <= cfg.j_max(); ++j)
    for (int m = -j; m <= j; ++m)
      if (std::abs(m + d) <= j) e.push_back({{j, m + d}, {j, m}, jpm_amplitude(sign, j, m)});
  return e;
}

std::vector<BandEntry> xpm_entries(const RepresentationConfig& cfg, Sign sign) {
  std::vector<BandEntry> e;
  const int d = sgn(sign);
  const int jm = cfg.j_max();
  for (int j = 0; j <= jm; ++j)
    for (int m = -j; m <= j; ++m) {
      if (j < jm) e.push_back({{j + 1, m + d}, {j, m}, xpm_raise_amplitude(sign, j, m)});
      if (j > 0 && std::abs(m + d) <= j - 1) e.push_back({{j - 1, m + d}, {j, m}, xpm_lower_amplitude(sign, j, m)});
    }
  return e;
}

std::vector<BandEntry> x3_entries(const RepresentationConfig& cfg) {
  std::vector<BandEntry> e;
  const int jm = cfg.j_max();
  for (int j = 0; j <= jm; ++j)
    for (int m = -j; m <= j; ++m) {
      if (j < jm) e.push_back({{j + 1, m}, {j, m}, x3_raise_amplitude(j, m)});
      if (j > 0 && std::abs(m) <= j - 1) e.push_back({{j - 1, m}, {j, m}, x3_lower_amplitude(j, m)});
    }
  return e;
}

// Cartesian components from the ladder pair: A1 = (A+ + A-)/2, A2 = (A+ - A-)/(2i).
BandOperator cartesian(const BandOperator& plus, const BandOperator& minus, Component c) {
  if (c == Component::one) return (plus + minus) * 0.5;
  return (plus - minus) * cplx(0.0, -0.5);
}

}  // namespace

BandOperator angular_momentum_operator(const RepresentationConfig& cfg, Component c) {
  switch (c) {
    case Component::three: {
      std::vector<BandEntry> e;
      for (int j = 0; j <= cfg.j_max(); ++j)
        for (int m = -j; m <= j; ++m)
          if (m != 0) e.push_back({{j, m}, {j, m}, static_cast<double>(m)});
      return BandOperator(cfg, e);
    }
    case Component::plus:
      return BandOperator(cfg, ladder_entries(cfg, Sign::plus));
    case Component::minus:
      return BandOperator(cfg, ladder_entries(cfg, Sign::minus));
    default:
      return cartesian(BandOperator(cfg, ladder_entries(cfg, Sign::plus)),
                       BandOperator(cfg, ladder_entries(cfg, Sign::minus)), c);
  }
}

BandOperator position_operator(const RepresentationConfig& cfg, Component c) {
  switch (c) {
    case Component::three:
      return BandOperator(cfg, x3_entries(cfg));
    case Component::plus:
      return BandOperator(cfg, xpm_entries(cfg, Sign::plus));
    case Component::minus:
      return BandOperator(cfg, xpm_entries(cfg, Sign::minus));
    default:
      return cartesian(BandOperator(cfg, xpm_entries(cfg, Sign::plus)),
                       BandOperator(cfg, xpm_entries(cfg, Sign::minus)), c);
  }
}

BandOperator build_z_operator(const RepresentationConfig& cfg, int axis) {
  if (axis < 1 || axis > 3) throw InvalidArgument("Z axis must be 1, 2 or 3");
  const Component c = axis == 1 ? Component::one : axis == 2 ? Component::two : Component::three;
  auto e = position_operator(cfg, c).entries();
  // Row shell j', column shell j: factor e^{-(j'(j'+1) - j(j+1))/2}, i.e.
  // e^{-(j+1)} going up and e^{j} going down.
  for (auto& entry : e) {
    const int jr = entry.row.j;
    const int jc = entry.col.j;
    entry.value *= std::exp(-0.5 * (static_cast<double>(jr) * (jr + 1) - static_cast<double>(jc) * (jc + 1)));
  }
  return BandOperator(cfg, e);
}

}  // namespace rotor
