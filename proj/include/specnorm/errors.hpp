#pragma once

#include <stdexcept>
#include <string>

namespace specnorm {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A mathematically invalid request (bad parameters, missing moments, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a numerical or logic bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define SPECNORM_DEFINE_ERROR(Name, Base)          \
  class Name : public Base {                       \
   public:                                         \
    explicit Name(const std::string& what)         \
        : Base(std::string(#Name ": ") + what) {}  \
  }

SPECNORM_DEFINE_ERROR(ParseError, UsageError);
SPECNORM_DEFINE_ERROR(UnknownSuite, UsageError);

SPECNORM_DEFINE_ERROR(InvalidParameter, DomainError);
SPECNORM_DEFINE_ERROR(NotHermitian, DomainError);
SPECNORM_DEFINE_ERROR(EmptyWord, DomainError);
SPECNORM_DEFINE_ERROR(OutOfRange, DomainError);
SPECNORM_DEFINE_ERROR(MomentDoesNotExist, DomainError);
SPECNORM_DEFINE_ERROR(MgfUnavailable, DomainError);
SPECNORM_DEFINE_ERROR(OddExponent, DomainError);
SPECNORM_DEFINE_ERROR(TooFewSamples, DomainError);
SPECNORM_DEFINE_ERROR(AlphaTooSmall, DomainError);
SPECNORM_DEFINE_ERROR(NotMajorized, DomainError);
SPECNORM_DEFINE_ERROR(LengthMismatch, DomainError);
SPECNORM_DEFINE_ERROR(DimensionMismatch, DomainError);

SPECNORM_DEFINE_ERROR(NoConvergence, InternalError);
SPECNORM_DEFINE_ERROR(NoPerfectMatching, InternalError);
SPECNORM_DEFINE_ERROR(InconsistentResult, InternalError);

#undef SPECNORM_DEFINE_ERROR

}  // namespace specnorm
