#pragma once

#include <stdexcept>
#include <string>

namespace trendlab {

/// Invalid parameters, inconsistent dimensions, malformed input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: singular system, iteration that did not converge.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace trendlab
