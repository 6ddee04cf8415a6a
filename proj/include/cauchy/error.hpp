#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cauchy {

/// Stable failure categories. The CLI prints `to_string(code)` verbatim so
/// scripts can branch on it.
enum class ErrorCode {
  InvalidArgument,
  Syntax,
  BadExponent,
  EvalAtSingularity,
  Range,
  SingularityOnContour,
  SingularityInRegion,
  NoConvergence,
  PointTooCloseToBoundary,
  PointNotOnBoundary,
  NotALoop,
  LoopHitsPoint,
  NoStabilization,
  StepTooCoarse,
  EndpointMismatch,
  NotSquare,
  DepthExhausted,
  BoundaryHitsValue,
  DerivativeTooSmall,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::Syntax: return "E_SYNTAX";
    case ErrorCode::BadExponent: return "E_BAD_EXPONENT";
    case ErrorCode::EvalAtSingularity: return "E_EVAL_AT_SINGULARITY";
    case ErrorCode::Range: return "E_RANGE";
    case ErrorCode::SingularityOnContour: return "E_SINGULARITY_ON_CONTOUR";
    case ErrorCode::SingularityInRegion: return "E_SINGULARITY_IN_REGION";
    case ErrorCode::NoConvergence: return "E_NO_CONVERGENCE";
    case ErrorCode::PointTooCloseToBoundary: return "E_POINT_TOO_CLOSE_TO_BOUNDARY";
    case ErrorCode::PointNotOnBoundary: return "E_POINT_NOT_ON_BOUNDARY";
    case ErrorCode::NotALoop: return "E_NOT_A_LOOP";
    case ErrorCode::LoopHitsPoint: return "E_LOOP_HITS_POINT";
    case ErrorCode::NoStabilization: return "E_NO_STABILIZATION";
    case ErrorCode::StepTooCoarse: return "E_STEP_TOO_COARSE";
    case ErrorCode::EndpointMismatch: return "E_ENDPOINT_MISMATCH";
    case ErrorCode::NotSquare: return "E_NOT_SQUARE";
    case ErrorCode::DepthExhausted: return "E_DEPTH_EXHAUSTED";
    case ErrorCode::BoundaryHitsValue: return "E_BOUNDARY_HITS_VALUE";
    case ErrorCode::DerivativeTooSmall: return "E_DERIVATIVE_TOO_SMALL";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by the parser; `position` is the 0-based byte offset of the
/// offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, const std::string& what, std::size_t position)
      : Error(code, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Bounded-depth exhaustion of a subdivision tree. `witness` is the chain of
/// nested offending cells from the root down to the deepest one, i.e. a
/// finite prefix of the would-be infinite branch.
template <class Cell>
class DepthExhausted : public Error {
 public:
  DepthExhausted(const std::string& what, std::vector<Cell> witness)
      : Error(ErrorCode::DepthExhausted, what), witness_(std::move(witness)) {}

  const std::vector<Cell>& witness() const noexcept { return witness_; }

 private:
  std::vector<Cell> witness_;
};

}  // namespace cauchy
