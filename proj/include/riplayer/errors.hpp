#pragma once

#include <stdexcept>
#include <string>

namespace riplayer {

// Failure categories surfaced to callers. The CLI maps these onto exit codes,
// the stability checker turns ThetaNotVertex into report incidents.
enum class Err {
  DimensionMismatch,
  DuplicatePoint,
  NegativeDistance,
  ZeroOffDiagonal,
  TriangleViolation,
  LengthMismatch,
  EmptyConfigSpace,
  BudgetExceeded,
  NotAVertex,
  BelowFirstEvent,
  ForestMismatch,
  NoCommonUpperBound,
  RTooSmall,
  ThetaNotVertex,
  BadInput,
};

inline const char* err_name(Err code) {
  switch (code) {
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::DuplicatePoint: return "DuplicatePoint";
    case Err::NegativeDistance: return "NegativeDistance";
    case Err::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case Err::TriangleViolation: return "TriangleViolation";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::EmptyConfigSpace: return "EmptyConfigSpace";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::NotAVertex: return "NotAVertex";
    case Err::BelowFirstEvent: return "BelowFirstEvent";
    case Err::ForestMismatch: return "ForestMismatch";
    case Err::NoCommonUpperBound: return "NoCommonUpperBound";
    case Err::RTooSmall: return "RTooSmall";
    case Err::ThetaNotVertex: return "ThetaNotVertex";
    case Err::BadInput: return "BadInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace riplayer
