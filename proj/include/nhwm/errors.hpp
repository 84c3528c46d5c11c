#pragma once

#include <stdexcept>
#include <string>

namespace nhwm {

// Configuration/input problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) +
                                          ")"
                                    : msg),
        line_number(line) {}
  int line_number;
};

// Runtime numerical failures; the CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nhwm
