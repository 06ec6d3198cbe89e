#pragma once

#include <stdexcept>
#include <string>

namespace dsa2 {

// Bad user input: malformed config, invalid parameter combinations,
// dimension mismatches. Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failure: iteration caps hit, non-finite values,
// unattainable tolerances. Maps to CLI exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problem instance has an empty feasible region. Maps to CLI exit code 3.
struct InfeasibleError : NumericError {
  explicit InfeasibleError(const std::string& msg) : NumericError(msg) {}
};

}  // namespace dsa2
