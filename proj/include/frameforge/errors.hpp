#ifndef FRAMEFORGE_ERRORS_HPP
#define FRAMEFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frameforge {

enum class ErrorCode {
  InvalidMatrix,
  CapExceeded,
  NotAReflection,
  DegenerateForm,
  DifferentAmbient,
  PanelTooSmall,
  MixedWall,
  InvalidSide,
  Disconnected,
  InconsistentTyping,
  TypeMismatch,
  NotThick,
  EmbeddingNotNormalizable,
  NotInvariant,
  NotThickBoundary,
  BadEmbedding,
  UnsupportedModel,
  BaseMismatch,
  UnpresentedModel,
  RankUnsupported,
  SearchBudgetExceeded,
  Parse,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotAReflection: return "NotAReflection";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::DifferentAmbient: return "DifferentAmbient";
    case ErrorCode::PanelTooSmall: return "PanelTooSmall";
    case ErrorCode::MixedWall: return "MixedWall";
    case ErrorCode::InvalidSide: return "InvalidSide";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InconsistentTyping: return "InconsistentTyping";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NotThick: return "NotThick";
    case ErrorCode::EmbeddingNotNormalizable: return "EmbeddingNotNormalizable";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotThickBoundary: return "NotThickBoundary";
    case ErrorCode::BadEmbedding: return "BadEmbedding";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::UnpresentedModel: return "UnpresentedModel";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace frameforge

#endif  // FRAMEFORGE_ERRORS_HPP
