#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adwave {

// Parameter values outside their mathematical domain.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Caller violated an operation precondition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A config document was rejected (unknown key, bad value, CFL violation).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite values appeared during time stepping.
struct BlowupError : std::runtime_error {
    explicit BlowupError(std::size_t step_index)
        : std::runtime_error("non-finite state produced at step " + std::to_string(step_index)),
          step(step_index) {}
    std::size_t step;
};

// The adaptive integrator's step size underflowed.
struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal structural guarantee failed; signals a bug, not bad input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace adwave
