#pragma once

#include <stdexcept>

namespace cyclefield {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition. The CLI maps these to exit code 2.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// An exact identity that must hold mathematically did not hold. Never a user
/// error: either the implementation or the formula it checks is wrong. The CLI
/// maps these to exit code 1.
class IdentityError : public Error {
  public:
    using Error::Error;
};

class NonPrimeCharacteristic : public DomainError {
  public:
    using DomainError::DomainError;
};

class FieldTooLarge : public DomainError {
  public:
    using DomainError::DomainError;
};

class MixedFields : public DomainError {
  public:
    using DomainError::DomainError;
};

class DivisionByZero : public DomainError {
  public:
    using DomainError::DomainError;
};

class DuplicateAbscissa : public DomainError {
  public:
    using DomainError::DomainError;
};

class DegreeTooSmall : public DomainError {
  public:
    using DomainError::DomainError;
};

class ZeroDegree : public DomainError {
  public:
    using DomainError::DomainError;
};

class EnumerationTooLarge : public DomainError {
  public:
    using DomainError::DomainError;
};

class OutOfRange : public DomainError {
  public:
    using DomainError::DomainError;
};

class AssumptionViolated : public DomainError {
  public:
    using DomainError::DomainError;
};

class InternalInconsistency : public IdentityError {
  public:
    using IdentityError::IdentityError;
};

}  // namespace cyclefield
