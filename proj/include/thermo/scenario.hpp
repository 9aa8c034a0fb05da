#pragma once

// Declarative scenario files: atoms plus an ordered script of computations and
// checks, executed against one world.
//
// {
//   "version": 1,
//   "reference": {"theta": 1, "T": 1},
//   "atoms": [{"name": "g", "kind": "ideal-gas", "n": 1}, {"name": "hot", "kind": "reservoir", "theta": 2}],
//   "script": [{"cmd": "carnot", "hot": "hot", "cold": "cold", "expect_ratio": 2}]
// }

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "thermo/random.hpp"

namespace thermo {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitParse = 2,
  kExitValidation = 3,
};

struct ScenarioOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = kDefaultSeed;
  /// Runs consecutive commands that share no atoms concurrently.
  bool parallel = false;
};

struct ScenarioOutcome {
  int exit_code = kExitOk;
  /// One or more lines per command, in script order.
  std::vector<std::string> lines;
  std::vector<std::string> failures;
  std::vector<std::filesystem::path> artifacts;
  /// Parse or validation message when exit_code is 2 or 3.
  std::string error;
};

ScenarioOutcome run_scenario_text(std::string_view text, const ScenarioOptions& opts = {});
ScenarioOutcome run_scenario_file(const std::filesystem::path& path, const ScenarioOptions& opts = {});

/// Names accepted in the "cmd" field.
const std::vector<std::string>& scenario_commands();

}  // namespace thermo
