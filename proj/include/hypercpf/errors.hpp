#pragma once

#include <stdexcept>
#include <string>

namespace hypercpf {

// Base class for all simulator errors so callers can catch the whole family.
struct SimulatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An input amplitude pair fails |c1|^2 + |c2|^2 = 1 within tolerance.
struct NormalizationError : SimulatorError {
    using SimulatorError::SimulatorError;
};

// A map or vector has the wrong dimension for the space it is applied to.
struct DimensionError : SimulatorError {
    using SimulatorError::SimulatorError;
};

// An operation that requires a nonzero state (renormalization, fidelity of
// a projected branch) received one with vanishing norm.
struct ZeroStateError : SimulatorError {
    using SimulatorError::SimulatorError;
};

// The element-composed interferometer block leaked amplitude out of the
// physical input/output arm; indicates a wiring or convention bug.
struct CompositionMismatchError : SimulatorError {
    using SimulatorError::SimulatorError;
};

// A physical parameter set or run configuration violates a stated invariant.
struct ValidationError : SimulatorError {
    using SimulatorError::SimulatorError;
};

} // namespace hypercpf
