#pragma once

#include <ostream>

namespace ppinv::cli {

enum Exit : int {
  ok = 0,
  not_pp = 1,
  malformed = 2,
  cross_check = 3,
};

/// Runs one CLI invocation. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppinv::cli
