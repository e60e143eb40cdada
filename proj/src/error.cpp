#include "gda/error.hpp"

namespace gda {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotRootOfUnity: return "NotRootOfUnity";
    case ErrorCode::InfiniteIndexRadical: return "InfiniteIndexRadical";
    case ErrorCode::NonSquareIndex: return "NonSquareIndex";
    case ErrorCode::DegreeOutsideGammaE: return "DegreeOutsideGammaE";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::NotDegreeZero: return "NotDegreeZero";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::SamePosition: return "SamePosition";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::ExceptionalF2Config: return "ExceptionalF2Config";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::InfiniteT0Star: return "InfiniteT0Star";
    case ErrorCode::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorCode::InfiniteCoefficientField: return "InfiniteCoefficientField";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::ValidationError;
}

}  // namespace gda
