#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rotor/vec3.hpp"

namespace rotor {

struct BasisIndex {
  int j = 0;
  int m = 0;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

// Truncated lambda = 0, r = 1 representation: shells j = 0 .. j_max.
class RepresentationConfig {
 public:
  explicit RepresentationConfig(int j_max);

  int j_max() const { return j_max_; }
  double radius() const { return 1.0; }
  double lambda() const { return 0.0; }

  // (j_max + 1)^2
  std::size_t dimension() const;
  // Dense offset j^2 + (m + j); shells ascending, m ascending within a shell.
  static std::size_t index(int j, int m) { return static_cast<std::size_t>(j * j + m + j); }
  static BasisIndex basis_index(std::size_t offset);
  bool contains(int j, int m) const { return j >= 0 && j <= j_max_ && m >= -j && m <= j; }

  friend bool operator==(const RepresentationConfig&, const RepresentationConfig&) = default;

 private:
  int j_max_;
};

class StateVector {
 public:
  explicit StateVector(RepresentationConfig cfg);
  StateVector(RepresentationConfig cfg, std::vector<cplx> coefficients);

  static StateVector basis(RepresentationConfig cfg, int j, int m);

  const RepresentationConfig& config() const { return cfg_; }
  std::size_t dimension() const { return c_.size(); }

  cplx& operator()(int j, int m) { return c_[RepresentationConfig::index(j, m)]; }
  cplx operator()(int j, int m) const { return c_[RepresentationConfig::index(j, m)]; }
  cplx& operator[](std::size_t i) { return c_[i]; }
  cplx operator[](std::size_t i) const { return c_[i]; }

  std::span<const cplx> coefficients() const { return c_; }
  std::span<cplx> coefficients() { return c_; }

  double norm_sq() const;
  double norm() const;
  // Sum over m of |c_{j,m}|^2.
  double shell_mass(int j) const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(cplx s);

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(cplx s, StateVector a) { return a *= s; }

 private:
  RepresentationConfig cfg_;
  std::vector<cplx> c_;
};

// <a|b>, conjugate-linear in a. Throws DimensionError on config mismatch.
cplx inner_product(const StateVector& a, const StateVector& b);

struct BandEntry {
  BasisIndex row;
  BasisIndex col;
  cplx value;
};

// Sparse operator whose entries couple shells j -> j, j +- 1 and m -> m, m +- 1.
// Immutable once built.
class BandOperator {
 public:
  // Duplicate (row, col) entries are summed. Throws InvalidArgument if an
  // entry violates the band constraint or lies outside the representation.
  BandOperator(RepresentationConfig cfg, std::span<const BandEntry> entries);

  const RepresentationConfig& config() const { return cfg_; }
  StateVector apply(const StateVector& s) const;
  cplx element(BasisIndex row, BasisIndex col) const;
  std::vector<BandEntry> entries() const;

  BandOperator operator+(const BandOperator& other) const;
  BandOperator operator-(const BandOperator& other) const;
  BandOperator operator*(cplx s) const;
  BandOperator adjoint() const;

 private:
  struct Slot {
    std::size_t col;
    cplx value;
  };
  RepresentationConfig cfg_;
  std::vector<std::size_t> row_start_;
  std::vector<Slot> slots_;
};

enum class Sign { plus, minus };

StateVector apply_j3(const StateVector& s);
StateVector apply_jpm(const StateVector& s, Sign sign);
StateVector apply_x3(const StateVector& s);
StateVector apply_xpm(const StateVector& s, Sign sign);

// Matrix elements. Channels leaving the representation are not included.
double jpm_amplitude(Sign sign, int j, int m);
double x3_raise_amplitude(int j, int m);
double x3_lower_amplitude(int j, int m);
double xpm_raise_amplitude(Sign sign, int j, int m);
double xpm_lower_amplitude(Sign sign, int j, int m);

enum class Component { one, two, three, plus, minus };

BandOperator angular_momentum_operator(const RepresentationConfig& cfg, Component c);
BandOperator position_operator(const RepresentationConfig& cfg, Component c);
// Z_i = e^{-J^2/2} X_i e^{J^2/2} for axis 1, 2 or 3.
BandOperator build_z_operator(const RepresentationConfig& cfg, int axis);

}  // namespace rotor
