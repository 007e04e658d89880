#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

// Base for every failure raised by the library. The CLI maps these to exit
// status 1; usage problems are reported separately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Coefficient mass in the top shell is too large for the chosen j_max.
class InadequateTruncation : public Error {
 public:
  InadequateTruncation(int j_max, double top_shell_mass);
  int j_max() const { return j_max_; }
  double top_shell_mass() const { return mass_; }

 private:
  int j_max_;
  double mass_;
};

class DegenerateAxis : public Error {
 public:
  using Error::Error;
};

class ZeroState : public Error {
 public:
  using Error::Error;
};

// Arg<X+> requested where |<X+>| is below the resolution threshold.
class UndefinedPhase : public Error {
 public:
  explicit UndefinedPhase(double t);
  double time() const { return t_; }

 private:
  double t_;
};

class CoarseSampling : public Error {
 public:
  using Error::Error;
};

class IndeterminateClassification : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace rotor
