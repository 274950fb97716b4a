#include "isingcorr/params.hpp"

#include <cmath>
#include <sstream>

#include "isingcorr/error.hpp"

namespace isingcorr {

const char* to_string(CorrelationKind kind) noexcept {
  switch (kind) {
    case CorrelationKind::Diagonal: return "diagonal";
    case CorrelationKind::Row: return "row";
    case CorrelationKind::Direct: return "direct";
  }
  return "unknown";
}

const char* to_string(Regime regime) noexcept {
  return regime == Regime::Below ? "below" : "above";
}

Regime classify_regime(double alpha2) {
  if (std::abs(alpha2 - 1.0) < kCriticalCutoff) {
    throw Error(ErrorCode::CriticalPoint, "alpha2 = 1 is the critical point");
  }
  return alpha2 < 1.0 ? Regime::Below : Regime::Above;
}

ModelParams::ModelParams(CorrelationKind kind, double alpha1, double alpha2,
                         std::optional<double> K1, std::optional<double> K2)
    : kind_(kind),
      regime_(classify_regime(alpha2)),
      alpha1_(alpha1),
      alpha2_(alpha2),
      K1_(K1),
      K2_(K2) {
  if (kind_ == CorrelationKind::Diagonal) t_ = alpha2_ * alpha2_;
}

ModelParams ModelParams::from_couplings(CorrelationKind kind, double K1, double K2) {
  if (!(std::isfinite(K1) && std::isfinite(K2)) || K1 <= 0.0 || K2 <= 0.0) {
    throw Error(ErrorCode::InvalidCoupling, "couplings K1, K2 must be finite and positive");
  }
  switch (kind) {
    case CorrelationKind::Diagonal:
      return ModelParams(kind, 0.0, 1.0 / (std::sinh(2 * K1) * std::sinh(2 * K2)), K1, K2);
    case CorrelationKind::Row: {
      const double scale = std::exp(-2 * K2);
      return ModelParams(kind, scale * std::tanh(K1), scale / std::tanh(K1), K1, K2);
    }
    case CorrelationKind::Direct:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "from_couplings needs the diagonal or row kind");
}

ModelParams ModelParams::direct(double alpha1, double alpha2) {
  if (!(std::isfinite(alpha1) && std::isfinite(alpha2)) || alpha1 < 0.0 || alpha2 <= 0.0 ||
      alpha1 > alpha2 || alpha1 >= 1.0) {
    throw Error(ErrorCode::InvalidAlphas, "need 0 <= alpha1 <= alpha2, alpha1 < 1");
  }
  if (std::abs(alpha2 - 1.0) < kCriticalCutoff) {
    throw Error(ErrorCode::InvalidAlphas, "alpha2 = 1 is the critical point");
  }
  return ModelParams(CorrelationKind::Direct, alpha1, alpha2, std::nullopt, std::nullopt);
}

ModelParams ModelParams::diagonal(double alpha2) {
  if (!std::isfinite(alpha2) || alpha2 <= 0.0) {
    throw Error(ErrorCode::InvalidAlphas, "alpha2 must be finite and positive");
  }
  return ModelParams(CorrelationKind::Diagonal, 0.0, alpha2, std::nullopt, std::nullopt);
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "kind=" << to_string(kind_) << " alpha1=" << alpha1_ << " alpha2=" << alpha2_;
  if (K1_) os << " K1=" << *K1_ << " K2=" << *K2_;
  os << " regime=" << to_string(regime_);
  return os.str();
}

}  // namespace isingcorr
