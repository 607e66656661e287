#pragma once

#include <stdexcept>
#include <string>

namespace lietoda {

/// Malformed or out-of-range input (bad type string, illegal subset, pole on the grid, ...).
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Floating-point failure: eigen-solver breakdown, Newton stagnation, overflow past the damping floor.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lietoda
