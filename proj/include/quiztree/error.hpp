#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quiztree {

enum class ErrorCode {
  PreconditionViolated,
  InvalidDistribution,
  TreeInvalid,
  SecretNotInTree,
  TooLarge,
  ConstantDistribution,
  MalformedIndex,
  InconsistentAnswers,
  UnknownFamily,
  IOFailure,
  BadStrategy,
  BadDistribution,
  UnknownSession,
  WrongState,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::TreeInvalid: return "TreeInvalid";
    case ErrorCode::SecretNotInTree: return "SecretNotInTree";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConstantDistribution: return "ConstantDistribution";
    case ErrorCode::MalformedIndex: return "MalformedIndex";
    case ErrorCode::InconsistentAnswers: return "InconsistentAnswers";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::BadStrategy: return "BadStrategy";
    case ErrorCode::BadDistribution: return "BadDistribution";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::WrongState: return "WrongState";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace quiztree
