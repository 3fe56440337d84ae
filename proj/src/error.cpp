#include "frhs/error.hpp"

namespace frhs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotSubalgebra: return "NotSubalgebra";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NearZeroVector: return "NearZeroVector";
    case ErrorCode::DegenerateFlag: return "DegenerateFlag";
    case ErrorCode::ThetaNearZero: return "ThetaNearZero";
    case ErrorCode::NotNaturallyReductive: return "NotNaturallyReductive";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace frhs
