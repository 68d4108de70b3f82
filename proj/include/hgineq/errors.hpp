#pragma once

#include <stdexcept>
#include <string>

namespace hgineq {

/// Bad argument value (non-positive dilation factor, p <= 1, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent structural setup (norm variant vs weights, unknown ids, bad config keys).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mathematical domain violation (pole of Gamma, non-integrable weight, k <= Re(beta)/2).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Discretization cannot represent the input to the required accuracy.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input violates a verifier precondition (complex profile on a real-only path, support escaping a ball).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Monte-Carlo sampling geometry failure.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hgineq
