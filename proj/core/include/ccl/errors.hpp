#pragma once

#include <stdexcept>
#include <string>

namespace ccl {

// Base of every error the library raises on purpose. Callers that want to
// distinguish categories catch the concrete types below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// (1 - w) or some other matrix has a singular value below eps_rank.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

class FeatureDisabled : public Error {
 public:
  using Error::Error;
};

// Root closure did not terminate under the vector cap.
class NonFiniteSystem : public Error {
 public:
  using Error::Error;
};

class GroupTooLarge : public Error {
 public:
  using Error::Error;
};

class DegenerateCone : public Error {
 public:
  using Error::Error;
};

// A sampler could not produce a point off every boundary under test.
class GenericityFailure : public Error {
 public:
  using Error::Error;
};

// An internal consistency assertion failed (e.g. parabolic subgroup differs
// from the pointwise fixator). Indicates a bug or broken tolerances.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ccl
