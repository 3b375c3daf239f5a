#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covals {

enum class ErrorCode {
  NonConvergence,
  NotHermitian,
  SingularMatrix,
  NotDivisible,
  ResidualTooLarge,
  IllConditionedInterpolation,
  DegenerateRemainder,
  NotTriangular,
  NotEigenvalue,
  DegenerateTangent,
  ColinearPoles,
  SyntaxError,
  UnknownSymbol,
  PointDomainAtomInLineContext,
  DegenerateInP,
  InvalidArgument,
  InputError,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every numerical and input failure in the library is reported through this
// type; `code()` names the failing condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

// Parse failures carry the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, std::size_t position, const std::string& what)
      : Error(code, what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace covals
