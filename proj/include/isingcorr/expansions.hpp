#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "isingcorr/fredholm.hpp"
#include "isingcorr/kernels.hpp"
#include "isingcorr/params.hpp"
#include "isingcorr/quadrature.hpp"
#include "isingcorr/toeplitz.hpp"

namespace isingcorr {

enum class Method { ChainQuadrature, EigenSymmetric, Combination, Direct };
const char* to_string(Method method) noexcept;

/// One order of an expansion at separation N. est_error is the change against
/// the same quantity on the half-size grid.
struct ExpansionTerm {
  int order = 0;
  int N = 0;
  double value = 0.0;
  double est_error = 0.0;
  Method method = Method::ChainQuadrature;
  double imag_residue = 0.0;
};

/// Shared state for expansion terms at one parameter point: kernels, grid,
/// chain engine and a cache of kernel matrices keyed by (N, hat). A half-size
/// twin grid is built on demand for error estimates.
class ExpansionContext {
 public:
  explicit ExpansionContext(ModelParams params, int M = kDefaultNodes,
                            std::optional<double> radius = std::nullopt);
  ExpansionContext(const ExpansionContext&) = delete;
  ExpansionContext& operator=(const ExpansionContext&) = delete;

  const ModelParams& params() const noexcept { return kernels_.params(); }
  const KernelSet& kernels() const noexcept { return kernels_; }
  const ChainEngine& engine() const noexcept { return engine_; }
  const ContourGrid& grid() const noexcept { return engine_.grid(); }

  std::shared_ptr<const KernelMatrix> kernel_matrix(int N, bool hat) const;
  std::vector<cplx> site(WeightFamily family, int power) const;

  /// Same radius, M/2 nodes; nullptr when M/2 < 8.
  const ExpansionContext* coarse() const;

  /// Determinant oracle on its own unit-circle grid.
  const ToeplitzOracle& oracle() const;

 private:
  KernelSet kernels_;
  ChainEngine engine_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, bool>, std::shared_ptr<const KernelMatrix>> matrices_;
  mutable std::unique_ptr<ExpansionContext> coarse_;
  mutable std::unique_ptr<ToeplitzOracle> oracle_;
};

/// F^(2n)_N (hat = false, below T_c) or F^hat^(2n)_N (hat = true, above T_c).
ExpansionTerm F_2n(const ExpansionContext& ctx, int N, int n, bool hat = false);

/// F^(2n)_N - F^(2n)_{N+1}: the chain with the (1 - prod z_k) insertion.
ExpansionTerm Ftilde_2n(const ExpansionContext& ctx, int N, int n);

/// Terms of x_0^(N) = 1 + sum_n phi_N^(2n), below T_c.
ExpansionTerm phi_2n(const ExpansionContext& ctx, int N, int n);

/// Terms of the B-system solve: x_N^(N) = sum_n G_N^(2n+1), above T_c.
ExpansionTerm G_2n1(const ExpansionContext& ctx, int N, int n);

/// f^(2n)_N (P, Q) or the hat variant (Phat, Qhat). Direct is the squared
/// Cauchy-determinant integrand on the 2n-fold grid product, n <= 2.
ExpansionTerm f_2n(const ExpansionContext& ctx, int N, int n, bool hat = false,
                   Method method = Method::EigenSymmetric);

/// f^(2n+1)_N above T_c. Combination: sum_k G^(2k+1)_N fhat^(2n-2k)_{N+1}.
/// Direct: the squared odd-point determinant integrand, n <= 1.
ExpansionTerm f_2n1(const ExpansionContext& ctx, int N, int n,
                    Method method = Method::Combination);

enum class Route { Determinant, Exponential, FormFactor };
const char* to_string(Route route) noexcept;
Route parse_route(const std::string& name);

struct ComparisonEntry {
  int N = 0;
  Route route = Route::Determinant;
  double value = 0.0;
  double est_error = 0.0;
  std::vector<ExpansionTerm> terms;
};

inline constexpr int kMaxOrders = 8;

/// D_N by one route, expansions truncated after n_max orders.
///
/// Below T_c:  S_inf exp(sum_{n<=n_max} F^(2n)_N)  or  S_inf sum_{n<=n_max} f^(2n)_N.
/// Above T_c:  S^hat_inf (sum_{m<=n_max} G^(2m+1)_N) exp(sum_{n<=n_max} F^hat^(2n)_{N+1})
///             or  S^hat_inf sum_{n<=n_max} f^(2n+1)_N.
/// The above-T_c overall sign is positive with the symbol branch fixed in
/// KernelSet; the truncation estimate is the last included term times the prefactor.
ComparisonEntry correlation(const ExpansionContext& ctx, int N, Route route, int n_max);

}  // namespace isingcorr
