#pragma once

#include <stdexcept>
#include <string>

namespace casrod {

/// Bad input to a constructor or builder (degree, element count, stiffness, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parametric coordinate or angle outside the domain of the object queried.
class OutOfDomain : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Base for failures that come out of the numerics rather than the inputs.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateParametrization : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Factorization broke down; usually the constraints leave a rigid mode free.
class SingularSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonAxisAlignedRotation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class MissingExactField : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InsufficientData : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace casrod
