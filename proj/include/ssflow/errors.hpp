#pragma once

#include <stdexcept>
#include <string>

namespace ssflow {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Integration
struct StepLimitExceeded : Error {
  using Error::Error;
};
struct NonFiniteState : Error {
  using Error::Error;
};

// Event location
struct NoSignChange : Error {
  using Error::Error;
};
struct AmbiguousEvent : Error {
  using Error::Error;
};

// Root finding
struct SingularJacobian : Error {
  using Error::Error;
};
struct MaxIterations : Error {
  using Error::Error;
};
struct EvaluationFailure : Error {
  using Error::Error;
};

// Quadrature
struct QuadratureFailure : Error {
  using Error::Error;
};

// Continuation / targeting
struct BranchLost : Error {
  using Error::Error;
};
struct TargetUnreachable : Error {
  using Error::Error;
};

// Gluing
struct SeamViolation : Error {
  using Error::Error;
};
struct ClosureFailure : Error {
  using Error::Error;
};

// Flow-specific guards
struct DegenerateCircle : Error {
  using Error::Error;
};
struct CurvatureVanished : Error {
  using Error::Error;
};
struct EpsilonZero : Error {
  using Error::Error;
};

// Interface misuse
struct UsageError : Error {
  using Error::Error;
};
struct UnknownCheck : Error {
  using Error::Error;
};

}  // namespace ssflow
