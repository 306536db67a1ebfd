#pragma once

#include <stdexcept>
#include <string>

namespace floq {

// Invalid configuration, CSV, or other user-supplied input.  CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (norm drift, lost unitarity, NaN/Inf).
// CLI exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace floq
