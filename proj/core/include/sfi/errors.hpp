#pragma once

#include <stdexcept>
#include <string>

namespace sfi {

/// Bad input: non-finite or out-of-domain parameters, malformed specs.
/// Distinct from hypothesis failures, which are reported as data.
class invalid_argument : public std::invalid_argument {
 public:
  explicit invalid_argument(const std::string& what) : std::invalid_argument(what) {}
};

/// Runtime failure of a numerical routine (NaN detected, denominator
/// hypothesis violated mid-quadrature, relaxation not converging).
class numerical_abort : public std::runtime_error {
 public:
  explicit numerical_abort(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file problems; maps to exit code 3 in the CLI.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sfi
