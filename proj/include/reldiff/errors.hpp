#pragma once

#include <stdexcept>
#include <string>

namespace reldiff {

/// Base of every error raised by the library. `kind()` is a stable name used
/// in census tables and CLI messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

/// Errors that describe the geometry at a particular parameter point. Grid
/// sweeps census these instead of aborting.
class GeometryError : public Error {
 public:
  using Error::Error;
};

#define RELDIFF_DEFINE_ERROR(Name, Base)                     \
  class Name : public Base {                                 \
   public:                                                   \
    using Base::Base;                                        \
    const char* kind() const noexcept override { return #Name; } \
  };

// Jet arithmetic
RELDIFF_DEFINE_ERROR(DomainError, GeometryError)
RELDIFF_DEFINE_ERROR(DivisionByZero, GeometryError)

// Surface and frame evaluation
RELDIFF_DEFINE_ERROR(RegularityError, GeometryError)
RELDIFF_DEFINE_ERROR(FlatPointError, GeometryError)
RELDIFF_DEFINE_ERROR(ZeroSupportError, GeometryError)
RELDIFF_DEFINE_ERROR(ComplexCurvatureError, GeometryError)
RELDIFF_DEFINE_ERROR(ZeroCurvatureError, GeometryError)
RELDIFF_DEFINE_ERROR(DegenerateParallelError, GeometryError)

// Configuration and contract violations
RELDIFF_DEFINE_ERROR(OrderError, Error)
RELDIFF_DEFINE_ERROR(ParseError, Error)
RELDIFF_DEFINE_ERROR(UnboundConstantError, Error)
RELDIFF_DEFINE_ERROR(PreconditionError, Error)
RELDIFF_DEFINE_ERROR(InsufficientSamplesError, Error)
RELDIFF_DEFINE_ERROR(InvariantError, Error)

#undef RELDIFF_DEFINE_ERROR

}  // namespace reldiff
