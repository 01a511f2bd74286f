#pragma once

#include <stdexcept>
#include <string>

namespace obisect {

/// Caller passed structurally invalid arguments (dimension mismatch, T < 2, ...).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Numerically degenerate input: rank-deficient vector set, zero vector,
/// zero-probability noise window.
struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The database access rules were broken (invalid query vector, ...).
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A query ticket was used to reach the oracle more than once.
struct OneShotViolation : ProtocolError {
  using ProtocolError::ProtocolError;
};

/// Bad experiment configuration (parse failure, unknown key, invalid value).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal invariant no longer holds (e.g. hypercube sides drifted apart).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace obisect
