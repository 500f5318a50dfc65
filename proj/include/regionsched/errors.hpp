#pragma once

#include <stdexcept>
#include <string>

namespace rsched {

// Base for every error the library reports to callers. Engine bugs are
// assertions, not Errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadRationalError : Error {
  using Error::Error;
};

// Instance parsing / validation, one named error per failure mode.
struct MalformedJsonError : Error {
  using Error::Error;
};
struct NonPositiveProcessingError : Error {
  using Error::Error;
};
struct DeadlineNotAfterReleaseError : Error {
  using Error::Error;
};
struct InfeasibleWindowError : Error {
  using Error::Error;
};
struct DuplicateIdError : Error {
  using Error::Error;
};
struct NonPositiveWeightError : Error {
  using Error::Error;
};

// Parameter domain violations (epsilon <= 0, delta >= epsilon, ...).
struct ParamDomainError : Error {
  using Error::Error;
};

// Subset-search oracle refused the instance.
struct CapExceededError : Error {
  using Error::Error;
};

// trace/instance/params given to the verifier do not belong together.
struct MismatchedTripleError : Error {
  using Error::Error;
};

}  // namespace rsched
