#pragma once

#include <stdexcept>

namespace fisher {

// Exception taxonomy mirrors the CLI exit-code contract:
//   2 = malformed or out-of-contract input (InputError and subclasses)
//   3 = a node budget interrupted a search before it was exhaustive
//   4 = internal invariant violation (TheoremViolation, std::logic_error)
// Typed refutations (hypothesis fails, no small set, vector not in the
// kernel) exit 1 when they terminate a CLI run; they are expected outcomes,
// not faults.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};
struct DimensionMismatch : InputError {
  using InputError::InputError;
};
struct CapacityExceeded : InputError {
  using InputError::InputError;
};
struct NonPrimeOrder : InputError {
  using InputError::InputError;
};

struct HypothesisViolated : Error {
  using Error::Error;
};
struct NoSmallSet : Error {
  using Error::Error;
};
struct SmallSetPresent : Error {
  using Error::Error;
};
struct NotInKernel : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

// Thrown when the refutation chain completes on a nonzero kernel vector of a
// family satisfying all hypotheses. No such input exists; reaching this means
// a bug upstream, and the CLI maps it to exit 4.
struct TheoremViolation : Error {
  using Error::Error;
};

}  // namespace fisher
