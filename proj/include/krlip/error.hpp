#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krlip {

enum class ErrorCode {
  NotSquare,
  AsymmetricMatrix,
  TriangleViolation,
  ZeroOffDiagonal,
  NegativeEntry,
  AlphaOutOfRange,
  DegenerateFit,
  SizeMismatch,
  NotBalanced,
  Infeasible,
  Unbounded,
  IterationLimit,
  DegenerateDiameter,
  ConstantTooSmall,
  EmptySchedule,
  UnknownPoint,
  ReconstructionMismatch,
  POutOfRange,
  SOutOfRange,
  ExponentViolation,
  BadKind,
  NTooSmall,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  /// I/O and parse failures map to exit code 2, everything else to 1.
  bool is_io() const noexcept {
    return code_ == ErrorCode::IoError || code_ == ErrorCode::ParseError;
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace krlip
