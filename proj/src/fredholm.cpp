#include "isingcorr/fredholm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "isingcorr/error.hpp"

namespace isingcorr {

KernelMatrix::KernelMatrix(Eigen::MatrixXcd K) : K_(std::move(K)) {
  if (!K_.allFinite()) throw Error(ErrorCode::NonFinite, "kernel matrix is not finite");
}

std::shared_ptr<const KernelMatrix> KernelMatrix::build(const KernelSet& kernels,
                                                        const ChainEngine& engine, int N,
                                                        bool hat) {
  const bool above = kernels.params().regime() == Regime::Above;
  if (hat != above) {
    throw Error(ErrorCode::RegimeMismatch, hat ? "hat kernel needs T > T_c" : "kernel needs T < T_c");
  }
  const WeightFamily odd_family = hat ? WeightFamily::QhatQhat : WeightFamily::QQ;
  const WeightFamily even_family = hat ? WeightFamily::PhatPhat : WeightFamily::PP;
  const auto odd =
      engine.site_vector([&](cplx z) { return pair_weight(kernels, odd_family, z); }, N);
  const auto even =
      engine.site_vector([&](cplx z) { return pair_weight(kernels, even_family, z); }, N);
  return std::make_shared<const KernelMatrix>(engine.cycle_matrix(odd, even));
}

cplx KernelMatrix::trace_power(int n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "trace power needs n >= 1");
  return power_sums(n)[n];
}

std::vector<cplx> KernelMatrix::power_sums(int n_max) const {
  std::vector<cplx> p(n_max + 1, 0.0);
  if (n_max < 1) return p;
  Eigen::MatrixXcd power = K_;
  p[1] = power.trace();
  for (int k = 2; k <= n_max; ++k) {
    power = (power * K_).eval();
    p[k] = power.trace();
  }
  return p;
}

void KernelMatrix::compute_spectrum() const {
  std::call_once(spectrum_once_, [this] {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(K_, false);
    reliable_ = solver.info() == Eigen::Success && solver.eigenvalues().allFinite();
    eigenvalues_ = solver.eigenvalues();
  });
}

const Eigen::VectorXcd& KernelMatrix::eigenvalues() const {
  compute_spectrum();
  return eigenvalues_;
}

bool KernelMatrix::spectrum_reliable() const {
  compute_spectrum();
  return reliable_;
}

double KernelMatrix::spectral_radius() const {
  const auto& eig = eigenvalues();
  return eig.size() == 0 ? 0.0 : eig.cwiseAbs().maxCoeff();
}

double log_det_expansion(const KernelMatrix& K) {
  if (!K.spectrum_reliable()) throw Error(ErrorCode::NonFinite, "eigensolver failed");
  if (K.spectral_radius() >= 1.0) {
    throw Error(ErrorCode::SpectralRadiusExceeded, "log det(I - K) needs rho(K) < 1");
  }
  cplx sum = 0.0;
  for (const cplx& lambda : K.eigenvalues()) sum += std::log(1.0 - lambda);
  return sum.real();
}

std::vector<cplx> elementary_from_roots(std::span<const cplx> roots, int n_max) {
  std::vector<cplx> e(n_max + 1, 0.0);
  e[0] = 1.0;
  int used = 0;
  for (const cplx& lambda : roots) {
    ++used;
    for (int k = std::min(used, n_max); k >= 1; --k) e[k] += lambda * e[k - 1];
  }
  return e;
}

std::vector<cplx> elementary_from_power_sums(std::span<const cplx> p, int n_max) {
  if (static_cast<int>(p.size()) <= n_max) {
    throw Error(ErrorCode::InvalidArgument, "need power sums p[1..n_max]");
  }
  std::vector<cplx> e(n_max + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= n_max; ++k) {
    cplx acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += ((i % 2 == 1) ? 1.0 : -1.0) * e[k - i] * p[i];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

FormFactorCoefficients ff_coeffs(const KernelMatrix& K, int n_max, SpectralMethod preferred) {
  if (n_max < 0 || n_max > K.size()) {
    throw Error(ErrorCode::InvalidArgument, "n_max must lie in [0, M]");
  }
  FormFactorCoefficients out;
  std::vector<cplx> e;
  if (preferred == SpectralMethod::Eigenvalues && K.spectrum_reliable()) {
    const auto& eig = K.eigenvalues();
    e = elementary_from_roots(std::span<const cplx>(eig.data(), eig.size()), n_max);
    out.method = SpectralMethod::Eigenvalues;
  } else {
    e = elementary_from_power_sums(K.power_sums(n_max), n_max);
    out.method = SpectralMethod::PowerSums;
  }
  out.values.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const cplx v = ((n % 2 == 0) ? 1.0 : -1.0) * e[n];
    out.values[n] = v.real();
    out.imag_residue = std::max(out.imag_residue, std::abs(v.imag()));
  }
  return out;
}

}  // namespace isingcorr
