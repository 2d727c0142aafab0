#include "momrec/errors.hpp"

namespace momrec {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidMoments: return "InvalidMoments";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::InsufficientMoments: return "InsufficientMoments";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MissingMoment: return "MissingMoment";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonRealNode: return "NonRealNode";
    case ErrorCode::AmplitudeNotUnit: return "AmplitudeNotUnit";
    case ErrorCode::NodeCollision: return "NodeCollision";
    case ErrorCode::SignPatternInvalid: return "SignPatternInvalid";
    case ErrorCode::BreakpointRecoveryFailed: return "BreakpointRecoveryFailed";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::BranchCrossing: return "BranchCrossing";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DecompositionInconclusive: return "DecompositionInconclusive";
    case ErrorCode::UnboundedSublevelSet: return "UnboundedSublevelSet";
    case ErrorCode::InconsistentVerdict: return "InconsistentVerdict";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidMoments:
    case ErrorCode::InvalidDomain:
    case ErrorCode::InsufficientMoments:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::MissingMoment:
    case ErrorCode::ZeroPolynomial:
      return true;
    default:
      return false;
  }
}

}  // namespace momrec
