#pragma once

#include <optional>
#include <string>

namespace isingcorr {

enum class CorrelationKind { Diagonal, Row, Direct };
enum class Regime { Below, Above };

const char* to_string(CorrelationKind kind) noexcept;
const char* to_string(Regime regime) noexcept;

/// Distance from alpha2 = 1 below which parameters are treated as critical.
inline constexpr double kCriticalCutoff = 1e-12;

/// Regime is a function of alpha2 alone. Throws CriticalPoint near alpha2 = 1.
Regime classify_regime(double alpha2);

/// Immutable parameter set for one Toeplitz symbol.
///
/// Diagonal correlations use alpha1 = 0, alpha2 = 1/(sinh 2K1 sinh 2K2);
/// row correlations use alpha1 = e^{-2K2} tanh K1, alpha2 = e^{-2K2} coth K1.
/// Direct parameters accept any 0 <= alpha1 < 1 with alpha1 <= alpha2.
class ModelParams {
 public:
  static ModelParams from_couplings(CorrelationKind kind, double K1, double K2);
  static ModelParams direct(double alpha1, double alpha2);
  /// Diagonal correlation specified through alpha2 itself (couplings left unset).
  static ModelParams diagonal(double alpha2);

  CorrelationKind kind() const noexcept { return kind_; }
  Regime regime() const noexcept { return regime_; }
  double alpha1() const noexcept { return alpha1_; }
  double alpha2() const noexcept { return alpha2_; }
  std::optional<double> K1() const noexcept { return K1_; }
  std::optional<double> K2() const noexcept { return K2_; }
  /// alpha2^2 for the diagonal kind, empty otherwise.
  std::optional<double> t() const noexcept { return t_; }
  /// alpha1 == alpha2: the symbol is identically one.
  bool degenerate() const noexcept { return alpha1_ == alpha2_; }

  /// Compact `kind=... alpha1=... alpha2=...` rendering used in report headers.
  std::string describe() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  ModelParams(CorrelationKind kind, double alpha1, double alpha2, std::optional<double> K1,
              std::optional<double> K2);

  CorrelationKind kind_;
  Regime regime_;
  double alpha1_;
  double alpha2_;
  std::optional<double> K1_;
  std::optional<double> K2_;
  std::optional<double> t_;
};

}  // namespace isingcorr
