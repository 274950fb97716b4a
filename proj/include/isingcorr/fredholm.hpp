#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "isingcorr/kernels.hpp"
#include "isingcorr/quadrature.hpp"

namespace isingcorr {

/// Nystrom discretisation of the two-step chain kernel,
///   K = (D_odd C)(D_even C),  D = diag(u_k W(z_k) z_k^N),  C[j,k] = 1/(1 - z_j z_k),
/// so that tr K^n is the closed 2n-site chain, sum_n F^(2n) = log det(I - K), and
/// f^(2n) = (-1)^n e_n(spectrum of K).
///
/// Below T_c the odd/even weights are QQ/PP; the hat variant uses Qhat Qhat/Phat Phat.
class KernelMatrix {
 public:
  explicit KernelMatrix(Eigen::MatrixXcd K);

  static std::shared_ptr<const KernelMatrix> build(const KernelSet& kernels,
                                                   const ChainEngine& engine, int N, bool hat);

  const Eigen::MatrixXcd& matrix() const noexcept { return K_; }
  int size() const noexcept { return static_cast<int>(K_.rows()); }

  cplx trace_power(int n) const;
  /// p_k = tr K^k for k = 1..n_max (index 0 unused).
  std::vector<cplx> power_sums(int n_max) const;

  /// Computed on first use; thread-safe.
  const Eigen::VectorXcd& eigenvalues() const;
  double spectral_radius() const;
  /// Whether the eigensolver converged to finite eigenvalues.
  bool spectrum_reliable() const;

 private:
  void compute_spectrum() const;

  Eigen::MatrixXcd K_;
  mutable std::once_flag spectrum_once_;
  mutable Eigen::VectorXcd eigenvalues_;
  mutable bool reliable_ = false;
};

/// sum_i log(1 - lambda_i); throws SpectralRadiusExceeded unless rho(K) < 1.
double log_det_expansion(const KernelMatrix& K);

enum class SpectralMethod { Eigenvalues, PowerSums };

struct FormFactorCoefficients {
  /// values[n] = (-1)^n e_n(lambda), n = 0..n_max.
  std::vector<double> values;
  SpectralMethod method = SpectralMethod::Eigenvalues;
  double imag_residue = 0.0;
};

FormFactorCoefficients ff_coeffs(const KernelMatrix& K, int n_max,
                                 SpectralMethod preferred = SpectralMethod::Eigenvalues);

/// e_0..e_{n_max} of the given roots, by expanding prod (1 + lambda x).
std::vector<cplx> elementary_from_roots(std::span<const cplx> roots, int n_max);

/// e_0..e_{n_max} from power sums p[1..n_max] by Newton's identities.
std::vector<cplx> elementary_from_power_sums(std::span<const cplx> p, int n_max);

}  // namespace isingcorr
