#include "isingcorr/error.hpp"

namespace isingcorr {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidCoupling: return "InvalidCoupling";
    case ErrorCode::CriticalPoint: return "CriticalPoint";
    case ErrorCode::InvalidAlphas: return "InvalidAlphas";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::PoleOnGrid: return "PoleOnGrid";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::MethodUnavailable: return "MethodUnavailable";
    case ErrorCode::SpectralRadiusExceeded: return "SpectralRadiusExceeded";
    case ErrorCode::DegeneratePoints: return "DegeneratePoints";
  }
  return "Unknown";
}

}  // namespace isingcorr
