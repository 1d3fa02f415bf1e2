#pragma once

#include <stdexcept>
#include <string>

namespace gpe2 {

// Invalid argument to an operation (bad coupling sign, mode count, a-range, ...).
struct parameter_error : std::invalid_argument {
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Two fields that must live on the same grid do not.
struct grid_mismatch_error : std::invalid_argument {
    explicit grid_mismatch_error(const std::string& what) : std::invalid_argument(what) {}
};

// An inner iterative solve failed to converge.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// An input is degenerate for the requested quantity (zero mass, ...).
struct degenerate_input_error : std::runtime_error {
    explicit degenerate_input_error(const std::string& what) : std::runtime_error(what) {}
};

// Moment vector too small to define a dipole axis.
struct direction_undefined_error : std::runtime_error {
    explicit direction_undefined_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unreadable file (field files, configs).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gpe2
