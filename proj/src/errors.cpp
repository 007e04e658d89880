#include "rotor/errors.hpp"

#include <cstdio>

namespace rotor {

namespace {

std::string truncation_message(int j_max, double mass) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "inadequate truncation: top-shell mass %.3e at j_max=%d", mass, j_max);
  return buf;
}

std::string phase_message(double t) {
  char buf[120];
  std::snprintf(buf, sizeof buf, "phase of <X+> undefined at t=%.17g", t);
  return buf;
}

}  // namespace

InadequateTruncation::InadequateTruncation(int j_max, double top_shell_mass)
    : Error(truncation_message(j_max, top_shell_mass)), j_max_(j_max), mass_(top_shell_mass) {}

UndefinedPhase::UndefinedPhase(double t) : Error(phase_message(t)), t_(t) {}

}  // namespace rotor
