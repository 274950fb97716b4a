#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "isingcorr/error.hpp"
#include "isingcorr/kernels.hpp"
#include "isingcorr/params.hpp"

namespace isingcorr {

inline constexpr int kDefaultNodes = 64;
inline constexpr int kMaxNodes = 1024;

/// M equispaced nodes z_k = r e^{2 pi i k/M} with weights u_k = z_k/M, so that
/// (1/2 pi i) \oint f(z) dz ~ sum_k u_k f(z_k).
struct ContourGrid {
  int M = 0;
  double r = 0.0;
  std::vector<cplx> nodes;
  std::vector<cplx> weights;

  /// z_k^p evaluated from the polar form with the angle index reduced mod M.
  cplx node_power(int k, int p) const;
};

/// Plain circle grid; M must be a power of two >= 8 and 0 < r.
ContourGrid make_circle_grid(int M, double r);

/// Midpoint between the innermost singularity radius and the unit circle.
double auto_radius(const ModelParams& params);

/// Grid on |z| = r for the kernels of `params`. Requires r in (r_min, 1) and
/// positive real parts for every square-root argument on the circle.
ContourGrid make_grid(const ModelParams& params, int M = kDefaultNodes,
                      std::optional<double> radius = std::nullopt);

template <class F>
cplx contour_integral(const ContourGrid& grid, F&& f) {
  cplx sum = 0.0;
  for (int k = 0; k < grid.M; ++k) {
    const cplx value = f(grid.nodes[k]);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw Error(ErrorCode::NonFinite, "integrand is not finite on the grid");
    }
    sum += grid.weights[k] * value;
  }
  return sum;
}

/// Nearest-neighbour chain contraction over one grid.
///
/// Site i (1-based) carries u(z_i) W(z_i) z_i^power with W = odd weight on odd
/// sites and even weight on even sites; consecutive sites couple through
/// 1/(1 - z_i z_{i+1}). A closed chain also couples the last site to the first
/// and is contracted as tr(K^pairs) with K = (D_odd C)(D_even C). Open chains
/// are contracted as vector-matrix products, O(sites M^2).
class ChainEngine {
 public:
  explicit ChainEngine(ContourGrid grid);

  const ContourGrid& grid() const noexcept { return grid_; }
  /// C[j,k] = 1/(1 - z_j z_k).
  const Eigen::MatrixXcd& cauchy() const noexcept { return cauchy_; }

  std::vector<cplx> site_vector(const std::function<cplx(cplx)>& weight, int power) const;

  Eigen::MatrixXcd cycle_matrix(std::span<const cplx> odd, std::span<const cplx> even) const;

  cplx closed(std::span<const cplx> odd, std::span<const cplx> even, int pairs) const;

  /// `endpoint` multiplies the first and the last site (empty span: no factor).
  cplx open(std::span<const cplx> odd, std::span<const cplx> even, int sites,
            std::span<const cplx> endpoint = {}) const;

 private:
  ContourGrid grid_;
  Eigen::MatrixXcd cauchy_;
};

struct ChainSpec {
  int sites = 2;
  int power = 0;
  std::function<cplx(cplx)> odd;
  std::function<cplx(cplx)> even;
  bool closed = true;
  /// Open chains only; applied to the first and the last variable.
  std::function<cplx(cplx)> endpoint;
};

/// Normalised multiple integral prod_i (1/2 pi i) \oint dz_i of the chain integrand.
cplx chain_integral(const ContourGrid& grid, const ChainSpec& spec);

struct Refinement {
  cplx value;
  double est_error = 0.0;
  int M_used = 0;
};

/// Doubles M until |v(2M) - v(M)| < tol * max(1, |v(2M)|). Throws
/// NoConvergenceError carrying the last value once M_max is reached.
Refinement refine_until(const std::function<cplx(int)>& compute, double tol,
                        int M_start = 16, int M_max = kMaxNodes);

}  // namespace isingcorr
