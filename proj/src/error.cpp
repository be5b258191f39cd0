#include "krlip/error.hpp"

namespace krlip {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotBalanced: return "NotBalanced";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::DegenerateDiameter: return "DegenerateDiameter";
    case ErrorCode::ConstantTooSmall: return "ConstantTooSmall";
    case ErrorCode::EmptySchedule: return "EmptySchedule";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::ReconstructionMismatch: return "ReconstructionMismatch";
    case ErrorCode::POutOfRange: return "POutOfRange";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::ExponentViolation: return "ExponentViolation";
    case ErrorCode::BadKind: return "BadKind";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace krlip
