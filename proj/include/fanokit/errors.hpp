#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fanokit {

enum class ErrorCode {
  UnboundedPolytope,
  DegeneratePolytope,
  OutOfDomain,
  NotFano,
  UnsupportedSubscheme,
  EmptyOrFull,
  NotSmoothPoint,
  DimensionTooSmall,
  NotSmoothChart,
  ZeroIdeal,
  FamilyNotGraded,
  R1NotFound,
  NoStabilization,
  CombinatorialBlowup,
  SizeCap,
  InvalidInput,
  Precondition,
  Configuration,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotFano: return "NotFano";
    case ErrorCode::UnsupportedSubscheme: return "UnsupportedSubscheme";
    case ErrorCode::EmptyOrFull: return "EmptyOrFull";
    case ErrorCode::NotSmoothPoint: return "NotSmoothPoint";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NotSmoothChart: return "NotSmoothChart";
    case ErrorCode::ZeroIdeal: return "ZeroIdeal";
    case ErrorCode::FamilyNotGraded: return "FamilyNotGraded";
    case ErrorCode::R1NotFound: return "R1NotFound";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::Configuration: return "Configuration";
  }
  return "Unknown";
}

/// Every failure the library reports carries one of the codes above, so
/// callers (and the CLI exit-code logic) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fanokit
