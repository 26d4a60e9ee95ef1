#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "factornorm/constant.hpp"
#include "factornorm/sets.hpp"

namespace factornorm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kViolation = 1,
  kUsage = 2,
  kNumerical = 3,
};

struct RunConfig {
  std::string subcommand;
  std::string set;  // descriptor text; empty selects the subcommand default
  double tol = 1e-8;
  std::size_t nodes = 1024;
  std::size_t candidates = 256;
  std::vector<std::size_t> degrees;
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  std::string out;  // empty: standard output
  std::string range = "0.1:4";
  double step = 0.05;
  std::string format;  // csv | json; empty selects the subcommand default
  std::string poly;    // check: fixed polynomial, '@file' or 'chebyshev:n=<int>'
  std::string method = "auto";  // constant: auto | closed | general | diam
  std::string measure_out;      // capacity: also write the measure CSV here
};

/// Text produced by a subcommand. Nothing is written anywhere until the
/// whole command has succeeded.
struct CommandOutput {
  int exit_code = kSuccess;
  std::string text;
};

/// Closed form when E is a disk or segment, the diameter shortcut when
/// diam(E) <= 1, the general path otherwise. `method` forces a route.
FactorConstantResult compute_constant(const CompactSet& set, const RunConfig& config);

CommandOutput cmd_constant(const RunConfig& config);
CommandOutput cmd_sweep(const RunConfig& config);
CommandOutput cmd_sharpness(const RunConfig& config);
CommandOutput cmd_check(const RunConfig& config);
CommandOutput cmd_capacity(const RunConfig& config);

struct CheckSummary {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_log_margin = 0.0;  // max of log(||q|| / (C^n ||p||))
  std::size_t worst_trial = 0;
};

/// Randomized audit of ||q|| <= C^n ||p|| (1 + 1e-9). Each trial draws from
/// its own generator seeded from (seed, trial index), so results do not
/// depend on evaluation order.
CheckSummary run_inequality_trials(const RunConfig& config);

/// Parses argv-style arguments (without the program name), runs the
/// subcommand, and writes its output to `out` or to --out. Diagnostics go
/// to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factornorm::cli
