#include "kitefold/error.hpp"

namespace kitefold {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CollinearInput: return "CollinearInput";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::HoleOutsideOuter: return "HoleOutsideOuter";
    case ErrorCode::DegenerateArea: return "DegenerateArea";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::PlacementFailed: return "PlacementFailed";
    case ErrorCode::NonTangentContact: return "NonTangentContact";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::NotCocircular: return "NotCocircular";
    case ErrorCode::GeometryError: return "GeometryError";
    case ErrorCode::DisconnectedDual: return "DisconnectedDual";
    case ErrorCode::NoBoundaryKite: return "NoBoundaryKite";
    case ErrorCode::TraceIncomplete: return "TraceIncomplete";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::AreaOutOfRange: return "AreaOutOfRange";
    case ErrorCode::AreaMismatch: return "AreaMismatch";
    case ErrorCode::NotScalene: return "NotScalene";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace kitefold
