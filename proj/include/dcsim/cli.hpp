#pragma once

#include <iosfwd>

namespace dcsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitRuntime = 2,
  kExitPartialSweep = 3,
};

/// Entry point behind the `dcsim` executable. Streams are injectable for
/// tests.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace dcsim
