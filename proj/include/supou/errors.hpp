#pragma once

#include <stdexcept>
#include <string>

namespace supou {

// Raised when a run configuration violates an existence condition or the
// schema. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numerical routine cannot deliver its contract (quadrature
// failure, overflow in a required intermediate). The CLI maps this to exit 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace supou
