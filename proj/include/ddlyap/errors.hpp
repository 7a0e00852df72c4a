#pragma once

#include <stdexcept>
#include <string>

namespace ddlyap {

// Shape or index mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Time/tau grids that cannot be formed (misaligned steps, too coarse, missing nodes).
class GridError : public std::invalid_argument {
public:
    explicit GridError(const std::string& what) : std::invalid_argument(what) {}
};

// A system outside the family the lifting supports (omega != pi or h != 1).
class UnsupportedSystemError : public std::invalid_argument {
public:
    explicit UnsupportedSystemError(const std::string& what) : std::invalid_argument(what) {}
};

// Trajectory fails to decay (or overflows): the defining integral for the
// Lyapunov matrix does not converge, so downstream quantities are undefined.
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative kernel failed to reach its convergence threshold.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration input (maps to the usage exit code in the CLI).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ddlyap
