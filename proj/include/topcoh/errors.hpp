#pragma once

#include <stdexcept>
#include <string>

namespace topcoh {

// Base of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotABasisError : public Error {
 public:
  using Error::Error;
};

class NotASimplexError : public Error {
 public:
  using Error::Error;
};

class MalformedComplexError : public Error {
 public:
  using Error::Error;
};

// Raised when a build or matrix job would exceed its configured cap.
class TooLargeError : public Error {
 public:
  TooLargeError(const std::string& what, std::string projected)
      : Error(what), projected_(std::move(projected)) {}
  const std::string& projected() const { return projected_; }

 private:
  std::string projected_;
};

class NotAClosedSurfaceError : public Error {
 public:
  using Error::Error;
};

class NotSpecialLinearError : public Error {
 public:
  using Error::Error;
};

class NotUnimodularError : public Error {
 public:
  using Error::Error;
};

class RankDisagreementError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace topcoh
