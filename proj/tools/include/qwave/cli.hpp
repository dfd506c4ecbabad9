#pragma once

#include <ostream>
#include <stdexcept>

namespace qwave {

/// Invalid user configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode { kOk = 0, kChecksFailed = 1, kConfigError = 2, kComputationError = 3 };

/// Entry point of the qwave tool; `argv[0]` is the program name.  Results go
/// to `out` (or the --output file), diagnostics to `err`.
int run_qwave(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwave
