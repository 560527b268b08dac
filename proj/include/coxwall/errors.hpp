#ifndef COXWALL_ERRORS_HPP
#define COXWALL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxwall {

enum class ErrorCode {
  NonSymmetric,
  BadDiagonal,
  BadEntry,
  RankMismatch,
  InputError,
  CapExceeded,
  ArithmeticOverflow,
  NotInAtlas,
  NotRightAngled,
  RelationViolated,
  CycleFound,
  TreeDisconnected,
  NotInjective,
  MarginTooLarge,
  EmbeddingUnverified,
  EmptyTree,
  MismatchedN,
  EmptySubset,
  ScaleMismatch,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::BadDiagonal: return "BadDiagonal";
    case ErrorCode::BadEntry: return "BadEntry";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InputError: return "InputError";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::NotInAtlas: return "NotInAtlas";
    case ErrorCode::NotRightAngled: return "NotRightAngled";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::CycleFound: return "CycleFound";
    case ErrorCode::TreeDisconnected: return "TreeDisconnected";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::MarginTooLarge: return "MarginTooLarge";
    case ErrorCode::EmbeddingUnverified: return "EmbeddingUnverified";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::MismatchedN: return "MismatchedN";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::ScaleMismatch: return "ScaleMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coxwall

#endif  // COXWALL_ERRORS_HPP
