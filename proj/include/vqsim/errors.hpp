#pragma once

#include <stdexcept>
#include <string>

namespace vqsim {

/// Qubit or parameter index outside its valid range.
class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Mismatched dimensions between operands.
class ShapeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Request would exceed a hard memory/size guard.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal identity failed beyond numerical noise; signals a broken assembly.
class NumericalConsistencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DegenerateBoundaryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File read/write failure; the message carries the path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace vqsim
