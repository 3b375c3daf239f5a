#include "covals/error.hpp"

namespace covals {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::IllConditionedInterpolation: return "IllConditionedInterpolation";
    case ErrorCode::DegenerateRemainder: return "DegenerateRemainder";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::NotEigenvalue: return "NotEigenvalue";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::ColinearPoles: return "ColinearPoles";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::PointDomainAtomInLineContext: return "PointDomainAtomInLineContext";
    case ErrorCode::DegenerateInP: return "DegenerateInP";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

}  // namespace covals
