#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "corrwork/correlation.hpp"

namespace corrwork::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Bad command-line input. Maps to kUsageError.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `classical`, `quantum`, `superquantum` or `table:<path>`.
CorrelationLaw parse_law(std::string_view name);

/// Accepts plain radians or multiples of pi: `pi`, `-pi/4`, `3pi/4`, `0.5*pi`.
double parse_angle(std::string_view text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corrwork::cli
