#ifndef UAVSIM_ERROR_HPP
#define UAVSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uavsim {

// Bad user-facing input: config values, dimensions, malformed patterns.
struct InvalidParameterError : std::invalid_argument {
    explicit InvalidParameterError(const std::string& what)
        : std::invalid_argument(what) {}
};

// A transmitter or UAV candidate placed inside a building / out of bounds.
struct InvalidPositionError : std::invalid_argument {
    explicit InvalidPositionError(const std::string& what)
        : std::invalid_argument(what) {}
};

// Grid or work-size budget exceeded.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what)
        : std::runtime_error(what) {}
};

// Placement has no feasible candidate; message names the binding constraint.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what)
        : std::runtime_error(what) {}
};

// Scenario file failed to parse or validate.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace uavsim

#endif
