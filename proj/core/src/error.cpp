#include "cycdesc/error.hpp"

namespace cycdesc {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnresolvedReference: return "unresolved-reference";
    case ErrorCode::IllDefinedMorphism: return "ill-defined-morphism";
    case ErrorCode::InvalidDeclaration: return "invalid-declaration";
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::FieldMismatch: return "field-mismatch";
    case ErrorCode::RingMismatch: return "ring-mismatch";
    case ErrorCode::UnsupportedShape: return "unsupported-shape";
    case ErrorCode::UndecidedPrimality: return "undecided-primality";
    case ErrorCode::NotMinimal: return "not-minimal";
    case ErrorCode::NonExactDivision: return "non-exact-division";
    case ErrorCode::NotContaining: return "not-containing";
    case ErrorCode::SaturationLimit: return "saturation-limit";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::NotUniversallyGeneralizing: return "not-universally-generalizing";
    case ErrorCode::EmptyFiber: return "empty-fiber";
    case ErrorCode::NotClosedImmersion: return "not-closed-immersion";
    case ErrorCode::VerificationFailure: return "verification-failure";
    case ErrorCode::GoldenMismatch: return "golden-mismatch";
  }
  return "unknown";
}

}  // namespace cycdesc
