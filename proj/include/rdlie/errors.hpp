#pragma once

#include <stdexcept>
#include <string>

namespace rdlie {

/// Base class for every failure raised by the library. Mathematical
/// failures (an axiom or cocycle condition that does not hold) derive from
/// MathError; malformed input derives from InputError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MathError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// Shapes or dimensions of the operands do not fit together.
class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class DegreeMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// Raised when an identity that is a theorem fails; indicates a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class ImageNotContained : public MathError {
 public:
  using MathError::MathError;
};

class NotInM : public MathError {
 public:
  using MathError::MathError;
};

class NotMaurerCartan : public MathError {
 public:
  using MathError::MathError;
};

class NotCocycle : public MathError {
 public:
  using MathError::MathError;
};

class NotASection : public InputError {
 public:
  using InputError::InputError;
};

class IncompatibleBaseOrKernel : public InputError {
 public:
  using InputError::InputError;
};

class ExactnessFailure : public InternalInconsistency {
 public:
  using InternalInconsistency::InternalInconsistency;
};

class ClassExceedsOrder : public MathError {
 public:
  using MathError::MathError;
};

class NotNilpotent : public MathError {
 public:
  using MathError::MathError;
};

class ActionNotNilpotent : public MathError {
 public:
  using MathError::MathError;
};

class NotAHomomorphism : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace rdlie
