#pragma once

#include <stdexcept>
#include <string>

namespace dfactor {

// Every library failure derives from Error; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define DFACTOR_ERROR(Name, Base)                                   \
  class Name : public Base {                                        \
   public:                                                          \
    using Base::Base;                                               \
    const char* kind() const noexcept override { return #Name; }    \
  };

DFACTOR_ERROR(InvalidDatum, Error)
DFACTOR_ERROR(DomainError, Error)
DFACTOR_ERROR(PoleError, Error)
DFACTOR_ERROR(ZeroAError, Error)
DFACTOR_ERROR(NoConvergence, Error)
DFACTOR_ERROR(EscapedStrip, Error)
DFACTOR_ERROR(MultiplicityError, Error)
DFACTOR_ERROR(CertificationMismatch, Error)
DFACTOR_ERROR(QuadratureInconclusive, Error)
DFACTOR_ERROR(InsufficientWindow, Error)
DFACTOR_ERROR(XOneError, Error)
DFACTOR_ERROR(RangeError, Error)
DFACTOR_ERROR(ThetaRangeError, Error)
DFACTOR_ERROR(EmptyInput, Error)
DFACTOR_ERROR(BadCharacter, Error)
DFACTOR_ERROR(UnknownEntry, Error)
DFACTOR_ERROR(CoefficientsUnavailable, Error)
DFACTOR_ERROR(ParseError, Error)
DFACTOR_ERROR(ValidationError, Error)

#undef DFACTOR_ERROR

}  // namespace dfactor
