#ifndef GENNUM_ERROR_HPP
#define GENNUM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gennum {

enum class ErrorCode {
  InvalidGrid,
  NotFinite,
  NotModerate,
  GridMismatch,
  DimensionMismatch,
  DivisionByNonInvertible,
  NotSymmetricClass,
  Degenerate,
  NotFree,
  CoefficientNotStrictlyNonzero,
  NotPositiveDefinite,
  DegenerateGram,
  NotLorentzian,
  NotTimeLike,
  NotUnit,
  NotSameOrientation,
  NotOrthogonal,
  PointOutsideDomain,
  DegenerateAtPoint,
  OrientationMismatch,
  DimensionTooLarge,
  SliceNotLorentzian,
  ParseError,
  UnknownName,
  TypeMismatch,
  UnknownDemo,
  OffGrid,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotModerate: return "NotModerate";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DivisionByNonInvertible: return "DivisionByNonInvertible";
    case ErrorCode::NotSymmetricClass: return "NotSymmetricClass";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::CoefficientNotStrictlyNonzero: return "CoefficientNotStrictlyNonzero";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DegenerateGram: return "DegenerateGram";
    case ErrorCode::NotLorentzian: return "NotLorentzian";
    case ErrorCode::NotTimeLike: return "NotTimeLike";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotSameOrientation: return "NotSameOrientation";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::DegenerateAtPoint: return "DegenerateAtPoint";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::SliceNotLorentzian: return "SliceNotLorentzian";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    case ErrorCode::OffGrid: return "OffGrid";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the contract
/// that was violated; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gennum

#endif  // GENNUM_ERROR_HPP
