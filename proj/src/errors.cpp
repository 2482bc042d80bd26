#include "fanlab/errors.hpp"

namespace fanlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::BadDiagram: return "BadDiagram";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::InvalidDatum: return "InvalidDatum";
    case ErrorCode::ConeNotInFan: return "ConeNotInFan";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NotQFactorial: return "NotQFactorial";
    case ErrorCode::AmbiguousRay: return "AmbiguousRay";
    case ErrorCode::NotQCartier: return "NotQCartier";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::NotAWall: return "NotAWall";
    case ErrorCode::NotExtremal: return "NotExtremal";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::OverlappingCones: return "OverlappingCones";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::NotInD0: return "NotInD0";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace fanlab
