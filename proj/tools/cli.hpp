#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gottcalc/oracle.hpp"

namespace gottcalc::cli {

enum ExitCode : int {
  kOk = 0,
  kIncomplete = 1,
  kUsage = 2,
  kProfile = 3,
  kCheckFailed = 4,
};

struct Hooks {
  /// Engine that `check` tests against the oracles; empty means decompose().
  DecomposeEngine check_engine;
};

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
             const Hooks& hooks = {});

}  // namespace gottcalc::cli
