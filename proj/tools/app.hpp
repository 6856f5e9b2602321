#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "supercon/kernel.hpp"

namespace supercon::app {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericalError = 3,
    kVerificationFailure = 4,
};

/// Parses `matern:m=<int>[,d=<int>][,amp=paper|unit]`. Throws DomainError.
KernelSpec parse_kernel(const std::string& text);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supercon::app
