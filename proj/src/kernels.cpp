#include "isingcorr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "isingcorr/error.hpp"

namespace isingcorr {

namespace {

cplx root(cplx w) { return std::sqrt(w); }

bool on_ray(cplx z, double start) {
  return z.imag() == 0.0 && z.real() >= start;
}

double safe_inverse(double a) {
  return a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / a;
}

}  // namespace

KernelSet::KernelSet(ModelParams params) : params_(params) {}

Annulus KernelSet::annulus() const noexcept {
  const double a1 = params_.alpha1();
  const double a2 = params_.alpha2();
  if (params_.regime() == Regime::Below) return {a2, 1.0 / a2};
  return {std::max(a1, 1.0 / a2), std::min(safe_inverse(a1), a2)};
}

cplx KernelSet::phi(cplx z) const {
  const double radius = std::abs(z);
  if (z == 0.0 || !annulus().contains(radius)) {
    throw Error(ErrorCode::BranchViolation, "phi evaluated outside its annulus of analyticity");
  }
  const double a1 = params_.alpha1();
  const double a2 = params_.alpha2();
  if (params_.regime() == Regime::Below) {
    return root(1.0 - a1 * z) * root(1.0 - a2 / z) / (root(1.0 - a1 / z) * root(1.0 - a2 * z));
  }
  return phi1(z) / z;
}

cplx KernelSet::phi1(cplx z) const {
  if (params_.regime() == Regime::Below) return z * phi(z);
  if (z == 0.0 || !annulus().contains(std::abs(z))) {
    throw Error(ErrorCode::BranchViolation, "phi1 evaluated outside its annulus of analyticity");
  }
  const double a1 = params_.alpha1();
  const double a2 = params_.alpha2();
  return -root(1.0 - a1 * z) * root(1.0 - z / a2) /
         (root(1.0 - a1 / z) * root(1.0 - 1.0 / (a2 * z)));
}

cplx KernelSet::P(cplx z) const {
  if (params_.regime() != Regime::Below) {
    throw Error(ErrorCode::RegimeMismatch, "P is the below-T_c factor");
  }
  if (on_ray(z, safe_inverse(params_.alpha2()))) {
    throw Error(ErrorCode::BranchViolation, "P evaluated on its cut");
  }
  return root(1.0 - params_.alpha2() * z) / root(1.0 - params_.alpha1() * z);
}

cplx KernelSet::Q(cplx z) const { return 1.0 / P(z); }

cplx KernelSet::Phat(cplx z) const {
  if (params_.regime() != Regime::Above) {
    throw Error(ErrorCode::RegimeMismatch, "Phat is the above-T_c factor");
  }
  if (on_ray(z, params_.alpha2())) {
    throw Error(ErrorCode::BranchViolation, "Phat evaluated on its cut");
  }
  return 1.0 / (root(1.0 - params_.alpha1() * z) * root(1.0 - z / params_.alpha2()));
}

cplx KernelSet::Qhat(cplx z) const { return 1.0 / Phat(z); }

double KernelSet::min_factor_real_part(double radius, int samples) const {
  const double a1 = params_.alpha1();
  const double a2 = params_.alpha2();
  const bool below = params_.regime() == Regime::Below;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const cplx z = std::polar(radius, 2.0 * std::numbers::pi * k / samples);
    const cplx args[] = {1.0 - a1 * z, 1.0 - a1 / z, below ? 1.0 - a2 * z : 1.0 - z / a2,
                         below ? 1.0 - a2 / z : 1.0 - 1.0 / (a2 * z)};
    for (const cplx& w : args) worst = std::min(worst, w.real());
  }
  return worst;
}

cplx pair_weight(const KernelSet& kernels, WeightFamily family, cplx z) {
  const cplx w = 1.0 / z;
  switch (family) {
    case WeightFamily::QQ: return kernels.Q(z) * kernels.Q(w);
    case WeightFamily::PP: return kernels.P(z) * kernels.P(w);
    case WeightFamily::QhatQhat: return kernels.Qhat(z) * kernels.Qhat(w);
    case WeightFamily::PhatPhat: return kernels.Phat(z) * kernels.Phat(w);
  }
  return 0.0;
}

double s_infinity(const ModelParams& params) {
  if (params.regime() != Regime::Below) {
    throw Error(ErrorCode::RegimeMismatch, "S_inf is the below-T_c limit");
  }
  const double a1 = params.alpha1();
  const double a2 = params.alpha2();
  const double ratio = (1 - a1 * a1) * (1 - a2 * a2) / ((1 - a1 * a2) * (1 - a1 * a2));
  return std::pow(ratio, 0.25);
}

double s_hat_infinity(const ModelParams& params) {
  if (params.regime() != Regime::Above) {
    throw Error(ErrorCode::RegimeMismatch, "S^hat_inf is the above-T_c limit");
  }
  const double a1 = params.alpha1();
  const double inv = 1.0 / params.alpha2();
  return std::pow((1 - a1 * a1) * (1 - inv * inv) * (1 - a1 * inv) * (1 - a1 * inv), 0.25);
}

}  // namespace isingcorr
