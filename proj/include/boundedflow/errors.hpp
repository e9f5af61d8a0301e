#pragma once

#include <stdexcept>
#include <string>

#include "boundedflow/types.hpp"

namespace boundedflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A function produced a non-finite value or exceeded its declared sup bound.
struct EvaluationError : Error {
    using Error::Error;
};

/// A quadrature could not reach the requested tolerance; carries the best estimate.
struct ToleranceError : Error {
    ToleranceError(const std::string& what, Real achieved_estimate)
        : Error(what), achieved(achieved_estimate) {}
    Real achieved;
};

/// An operator precondition failed (e.g. g dips below its lower bound l).
struct PreconditionViolation : Error {
    using Error::Error;
};

/// A paper hypothesis failed under sampling (e.g. G(x,t) <= 0 inside the box).
struct HypothesisViolation : Error {
    using Error::Error;
};

/// The attractivity condition does not hold (lambda <= 0).
struct ConditionViolation : Error {
    using Error::Error;
};

/// Operation requested on a problem shape it does not support (nonlocal IVP).
struct UnsupportedProblem : Error {
    using Error::Error;
};

struct ArgumentError : Error {
    using Error::Error;
};

/// Malformed run configuration (CLI / JSON layer).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace boundedflow
