#pragma once

#include <stdexcept>
#include <string>

namespace prop {

// Representation / size mismatch between operands.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// A series or iteration failed to reach its tolerance. Carries the best
// ratio/residual achieved so callers can report it.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved(achieved_) {}
    double achieved;
};

// Bad experiment configuration (unknown key, missing value, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace prop
