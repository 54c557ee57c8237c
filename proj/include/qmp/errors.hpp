#pragma once

#include <stdexcept>
#include <string>

namespace qmp {

// Thrown when a gate or observable references a qubit outside the state.
struct InvalidQubitError : std::out_of_range {
    explicit InvalidQubitError(const std::string& what) : std::out_of_range(what) {}
};

// Thrown when vector/matrix dimensions disagree.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a tensor product would exceed the configured qubit budget.
struct CapacityError : std::length_error {
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Thrown on attempts to normalize an (all-zero) degenerate state.
struct DegenerateStateError : std::runtime_error {
    explicit DegenerateStateError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a weighted sum of circuits cancels the state below tolerance.
struct DestructiveCancellationError : std::runtime_error {
    explicit DestructiveCancellationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on invalid parameter values (negative decay constants, bad bounds, ...).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a numeric quantity that must be finite is not.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by config loading/validation; carries the offending field name in the message.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on file read/write failures; message includes the path.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qmp
