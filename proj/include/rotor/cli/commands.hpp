#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotor/cli/run_config.hpp"

namespace rotor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Each command writes its artifacts and returns an exit status. Library
// errors propagate; run() maps them to exit codes.
int cmd_evolve(const RunConfig& cfg, std::ostream& log);
int cmd_density(const RunConfig& cfg, std::ostream& log);
int cmd_trajectory(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

struct InvariantResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Invariant checks for the configured state; deterministic for a fixed config.
std::vector<InvariantResult> verify_suite(const RunConfig& cfg);
nlohmann::json verify_report(const RunConfig& cfg, const std::vector<InvariantResult>& results);

// Dispatches on cfg.mode: 0 ok, 1 numerical or verification failure, 2 usage.
int run(const RunConfig& cfg, std::ostream& log);
// Parses argv and runs.
int main_entry(int argc, const char* const* argv, std::ostream& log);

}  // namespace rotor::cli
