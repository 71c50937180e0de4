#pragma once

#include <stdexcept>
#include <string>

namespace jarnik {

enum class ErrorCode {
  NotIsolating,
  RationalRoot,
  NotSquarefree,
  FieldMismatch,
  DivisionByZero,
  DependentColumns,
  DimensionTooLarge,
  EmptySet,
  BoundTooLargeForBudget,
  CatalogExhausted,
  PointNotOnSubspace,
  IllegalBlackReply,
  ScriptIllegal,
  BlockIncomplete,
  ArenaNotApplicable,
  ConfigInvalid,
  ParseError,
  InvalidArgument,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotIsolating: return "NotIsolating";
    case ErrorCode::RationalRoot: return "RationalRoot";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DependentColumns: return "DependentColumns";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::BoundTooLargeForBudget: return "BoundTooLargeForBudget";
    case ErrorCode::CatalogExhausted: return "CatalogExhausted";
    case ErrorCode::PointNotOnSubspace: return "PointNotOnSubspace";
    case ErrorCode::IllegalBlackReply: return "IllegalBlackReply";
    case ErrorCode::ScriptIllegal: return "ScriptIllegal";
    case ErrorCode::BlockIncomplete: return "BlockIncomplete";
    case ErrorCode::ArenaNotApplicable: return "ArenaNotApplicable";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jarnik
