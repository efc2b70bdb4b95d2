#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hhmat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A spectrum (or scalar argument) fell outside the domain of a function.
class DomainViolation : public Error {
 public:
  DomainViolation(const std::string& what, std::vector<double> offending)
      : Error(what), offending_(std::move(offending)) {}
  const std::vector<double>& offending() const noexcept { return offending_; }

 private:
  std::vector<double> offending_;
};

class AntinormOnIndefinite : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A function's flags (convexity, monotonicity, sign at 0) do not satisfy a
/// checker's hypothesis, or sampled verification of the flags failed.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class SpecMismatch : public Error {
 public:
  using Error::Error;
};

class NotMajorized : public Error {
 public:
  using Error::Error;
};

class NoPerfectMatching : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhmat
