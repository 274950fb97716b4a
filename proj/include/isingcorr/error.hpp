#pragma once

#include <stdexcept>
#include <string>

namespace isingcorr {

enum class ErrorCode {
  InvalidCoupling,
  CriticalPoint,
  InvalidAlphas,
  InvalidArgument,
  BranchViolation,
  RegimeMismatch,
  RadiusOutOfRange,
  NonFinite,
  PoleOnGrid,
  NoConvergence,
  SingularMatrix,
  MethodUnavailable,
  SpectralRadiusExceeded,
  DegeneratePoints,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by refinement loops; carries the best value reached before giving up.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_real, double best_imag, double est_error,
                     int m_used)
      : Error(ErrorCode::NoConvergence, what),
        best_real(best_real),
        best_imag(best_imag),
        est_error(est_error),
        m_used(m_used) {}

  double best_real;
  double best_imag;
  double est_error;
  int m_used;
};

}  // namespace isingcorr
