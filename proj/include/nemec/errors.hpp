#pragma once

#include <stdexcept>
#include <string>

namespace nemec {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Charge neutrality precondition of the potential solve violated.
struct NonNeutralCharge : SimError {
    using SimError::SimError;
};

// Krylov iteration cap hit; carries the final iteration count and residual.
struct NoConvergence : SimError {
    int iterations;
    double final_residual;
    NoConvergence(std::string msg, int iters, double res)
        : SimError(std::move(msg)), iterations(iters), final_residual(res) {}
};

// A time step produced a state outside its admissible bounds (dt too large).
struct StepRejected : SimError {
    using SimError::SimError;
};

struct InvalidPreset : SimError {
    using SimError::SimError;
};

// An initial state failed one of the hypotheses checked before a run.
struct HypothesisViolation : SimError {
    using SimError::SimError;
};

struct InsufficientTrajectory : SimError {
    using SimError::SimError;
};

struct ConfigError : SimError {
    using SimError::SimError;
};

// Director magnitude exceeded the barrier confinement bound where a field
// operation requires |n| to be under control.
struct DirectorOutOfRange : SimError {
    using SimError::SimError;
};

} // namespace nemec
