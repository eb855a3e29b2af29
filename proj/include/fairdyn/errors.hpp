#ifndef FAIRDYN_ERRORS_HPP
#define FAIRDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairdyn {

// Invalid scenario parameters or malformed configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative numeric procedure failed to converge or hit a degenerate case.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fairdyn

#endif
