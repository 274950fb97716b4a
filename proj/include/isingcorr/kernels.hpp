#pragma once

#include <complex>

#include "isingcorr/params.hpp"

namespace isingcorr {

using cplx = std::complex<double>;

/// Open annulus inner < |z| < outer.
struct Annulus {
  double inner;
  double outer;
  bool contains(double radius) const noexcept { return inner < radius && radius < outer; }
};

/// Toeplitz symbols and their Wiener-Hopf factors.
///
/// Every factor (1 - a z)^{±1/2} is evaluated with the principal square root and
/// the factors are then multiplied, so no branch of a ratio is ever tracked.
/// Below T_c:  phi = P(z)^{-1} Q(1/z)^{-1},  P = ((1 - a2 z)/(1 - a1 z))^{1/2} = 1/Q.
/// Above T_c:  phi1 = z phi = -Phat(z)^{-1} Qhat(1/z)^{-1},
///             Phat = ((1 - a1 z)(1 - z/a2))^{-1/2} = 1/Qhat.
/// The overall minus sign above T_c selects the square-root branch with
/// phi1(1) = -1, for which det A_N > 0 and (-1)^N det B_N tends to S^hat_inf.
class KernelSet {
 public:
  explicit KernelSet(ModelParams params);

  const ModelParams& params() const noexcept { return params_; }

  /// Region where phi is analytic with the fixed branch.
  Annulus annulus() const noexcept;

  cplx phi(cplx z) const;
  cplx phi1(cplx z) const;

  cplx P(cplx z) const;
  cplx Q(cplx z) const;
  cplx Phat(cplx z) const;
  cplx Qhat(cplx z) const;

  /// Smallest real part over the square-root arguments that the symbol and its
  /// factors (at z and 1/z) use on the circle |z| = radius.
  double min_factor_real_part(double radius, int samples = 64) const;

 private:
  ModelParams params_;
};

/// Symmetrised site weights W(z) W(1/z) of the chain integrands.
enum class WeightFamily { QQ, PP, QhatQhat, PhatPhat };

cplx pair_weight(const KernelSet& kernels, WeightFamily family, cplx z);

/// [(1 - a1^2)(1 - a2^2) / (1 - a1 a2)^2]^{1/4}; below T_c only.
double s_infinity(const ModelParams& params);
/// [(1 - a1^2)(1 - a2^{-2})(1 - a1/a2)^2]^{1/4}; above T_c only.
double s_hat_infinity(const ModelParams& params);

}  // namespace isingcorr
