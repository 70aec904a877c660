#pragma once

#include "robin_fsi/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace robin_fsi {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

struct ExperimentOutcome {
  int status = kExitOk;
  std::vector<std::string> files;   // written reports, in order
  std::vector<std::string> errors;  // one line per failed run or violated check
};

/// Runs one experiment and writes its reports plus `effective_config.ini` into c.output.
/// Failed runs are logged to `errors.log` there and give status 1; the remaining runs still report.
ExperimentOutcome run_experiment(const RunConfig& c, std::ostream* progress = nullptr);

}  // namespace robin_fsi
