#include "isingcorr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace isingcorr {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

void require_finite(std::span<const cplx> values, const char* what) {
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::NonFinite, what);
    }
  }
}

}  // namespace

cplx ContourGrid::node_power(int k, int p) const {
  const long long index = ((static_cast<long long>(k) * p) % M + M) % M;
  return std::polar(std::pow(r, p), 2.0 * std::numbers::pi * static_cast<double>(index) / M);
}

ContourGrid make_circle_grid(int M, double r) {
  if (M < 8 || !is_power_of_two(M) || M > (1 << 20)) {
    throw Error(ErrorCode::InvalidArgument, "node count must be a power of two >= 8");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::RadiusOutOfRange, "radius must be positive");
  }
  ContourGrid grid;
  grid.M = M;
  grid.r = r;
  grid.nodes.resize(M);
  grid.weights.resize(M);
  for (int k = 0; k < M; ++k) {
    grid.nodes[k] = std::polar(r, 2.0 * std::numbers::pi * k / M);
    grid.weights[k] = grid.nodes[k] / static_cast<double>(M);
  }
  return grid;
}

double auto_radius(const ModelParams& params) {
  const double r_min = params.regime() == Regime::Below
                           ? params.alpha2()
                           : std::max(params.alpha1(), 1.0 / params.alpha2());
  return 0.5 * (1.0 + r_min);
}

ContourGrid make_grid(const ModelParams& params, int M, std::optional<double> radius) {
  const KernelSet kernels(params);
  const double r = radius.value_or(auto_radius(params));
  const Annulus ann = kernels.annulus();
  if (!(r > ann.inner && r < std::min(1.0, ann.outer))) {
    std::ostringstream os;
    os << "radius " << r << " outside (" << ann.inner << ", 1)";
    throw Error(ErrorCode::RadiusOutOfRange, os.str());
  }
  if (kernels.min_factor_real_part(r) <= 0.0) {
    throw Error(ErrorCode::BranchViolation, "square-root argument crosses the cut on the grid");
  }
  return make_circle_grid(M, r);
}

ChainEngine::ChainEngine(ContourGrid grid) : grid_(std::move(grid)) {
  const int M = grid_.M;
  cauchy_.resize(M, M);
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k < M; ++k) {
      const cplx gap = 1.0 - grid_.nodes[j] * grid_.nodes[k];
      if (std::abs(gap) < 1e-14) throw Error(ErrorCode::PoleOnGrid, "z_j z_k = 1 on the grid");
      cauchy_(j, k) = 1.0 / gap;
    }
  }
}

std::vector<cplx> ChainEngine::site_vector(const std::function<cplx(cplx)>& weight,
                                           int power) const {
  std::vector<cplx> out(grid_.M);
  for (int k = 0; k < grid_.M; ++k) {
    out[k] = grid_.weights[k] * weight(grid_.nodes[k]) * grid_.node_power(k, power);
  }
  require_finite(out, "site weight is not finite on the grid");
  return out;
}

Eigen::MatrixXcd ChainEngine::cycle_matrix(std::span<const cplx> odd,
                                           std::span<const cplx> even) const {
  const int M = grid_.M;
  const Eigen::Map<const Eigen::VectorXcd> wo(odd.data(), M);
  const Eigen::Map<const Eigen::VectorXcd> we(even.data(), M);
  const Eigen::MatrixXcd left = wo.asDiagonal() * cauchy_;
  const Eigen::MatrixXcd right = we.asDiagonal() * cauchy_;
  return left * right;
}

cplx ChainEngine::closed(std::span<const cplx> odd, std::span<const cplx> even,
                         int pairs) const {
  if (pairs < 1) throw Error(ErrorCode::InvalidArgument, "closed chain needs pairs >= 1");
  const Eigen::MatrixXcd kernel = cycle_matrix(odd, even);
  Eigen::MatrixXcd power = kernel;
  for (int p = 1; p < pairs; ++p) power = (power * kernel).eval();
  return power.trace();
}

cplx ChainEngine::open(std::span<const cplx> odd, std::span<const cplx> even, int sites,
                       std::span<const cplx> endpoint) const {
  if (sites < 1) throw Error(ErrorCode::InvalidArgument, "open chain needs sites >= 1");
  const int M = grid_.M;
  const Eigen::Map<const Eigen::VectorXcd> wo(odd.data(), M);
  const Eigen::Map<const Eigen::VectorXcd> we(even.data(), M);
  Eigen::RowVectorXcd v = wo.transpose();
  if (!endpoint.empty()) {
    v = v.cwiseProduct(Eigen::Map<const Eigen::RowVectorXcd>(endpoint.data(), M));
  }
  for (int site = 2; site <= sites; ++site) {
    const auto& w = (site % 2 == 1) ? wo : we;
    v = (v * cauchy_).cwiseProduct(w.transpose());
  }
  if (!endpoint.empty()) {
    return v.cwiseProduct(Eigen::Map<const Eigen::RowVectorXcd>(endpoint.data(), M)).sum();
  }
  return v.sum();
}

cplx chain_integral(const ContourGrid& grid, const ChainSpec& spec) {
  const ChainEngine engine(grid);
  const auto odd = engine.site_vector(spec.odd, spec.power);
  const auto even = engine.site_vector(spec.even, spec.power);
  if (spec.closed) {
    if (spec.sites < 2 || spec.sites % 2 != 0) {
      throw Error(ErrorCode::InvalidArgument, "closed chains need an even number of sites");
    }
    return engine.closed(odd, even, spec.sites / 2);
  }
  std::vector<cplx> ends;
  if (spec.endpoint) {
    ends.resize(grid.M);
    for (int k = 0; k < grid.M; ++k) ends[k] = spec.endpoint(grid.nodes[k]);
    require_finite(ends, "endpoint factor is not finite on the grid");
  }
  return engine.open(odd, even, spec.sites, ends);
}

Refinement refine_until(const std::function<cplx(int)>& compute, double tol, int M_start,
                        int M_max) {
  int M = M_start;
  cplx previous = compute(M);
  double diff = std::numeric_limits<double>::infinity();
  while (2 * M <= M_max) {
    M *= 2;
    const cplx current = compute(M);
    diff = std::abs(current - previous);
    if (diff < tol * std::max(1.0, std::abs(current))) return {current, diff, M};
    previous = current;
  }
  std::ostringstream os;
  os << "no convergence to tol " << tol << " by M = " << M;
  throw NoConvergenceError(os.str(), previous.real(), previous.imag(), diff, M);
}

}  // namespace isingcorr
