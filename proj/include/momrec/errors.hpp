#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace momrec {

enum class ErrorCode {
  // validation
  InvalidInput,
  InvalidMoments,
  InvalidDomain,
  InsufficientMoments,
  IndexOutOfRange,
  MissingMoment,
  ZeroPolynomial,
  // reconstruction / numerical failures
  RankDeficient,
  NonRealNode,
  AmplitudeNotUnit,
  NodeCollision,
  SignPatternInvalid,
  BreakpointRecoveryFailed,
  ResidualTooLarge,
  BranchCrossing,
  NotElliptic,
  SingularSystem,
  QuadratureFailure,
  DecompositionInconclusive,
  UnboundedSublevelSet,
  InconsistentVerdict,
};

std::string_view error_name(ErrorCode code);
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace momrec
