#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define STEKLOV_DECLARE_ERROR(Name)                                         \
  class Name : public Error {                                               \
  public:                                                                   \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
  };

STEKLOV_DECLARE_ERROR(AlphaOutOfRange)
STEKLOV_DECLARE_ERROR(OriginUndefined)
STEKLOV_DECLARE_ERROR(PoleAtXi)
STEKLOV_DECLARE_ERROR(DegenerateDomain)
STEKLOV_DECLARE_ERROR(NotConverged)
STEKLOV_DECLARE_ERROR(TooCloseToBoundary)
STEKLOV_DECLARE_ERROR(TailModelMissing)
STEKLOV_DECLARE_ERROR(QuadratureNotConverged)

#undef STEKLOV_DECLARE_ERROR

}  // namespace steklov
