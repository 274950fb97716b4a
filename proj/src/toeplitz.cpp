#include "isingcorr/toeplitz.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "isingcorr/error.hpp"

namespace isingcorr {

namespace {

void check_size(int N, int lo) {
  if (N < lo || N > kMaxToeplitzSize + 1) {
    throw Error(ErrorCode::InvalidArgument, "Toeplitz size out of range");
  }
}

DetResult lu_determinant(const Eigen::MatrixXcd& m) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  if (lu.rcond() < 1e-14) throw Error(ErrorCode::SingularMatrix, "Toeplitz matrix is singular");
  const cplx det = lu.determinant();
  return {det.real(), std::abs(det.imag())};
}

}  // namespace

ContourGrid make_symbol_grid(const ModelParams& params, int M) {
  if (!KernelSet(params).annulus().contains(1.0)) {
    throw Error(ErrorCode::BranchViolation, "unit circle outside the symbol annulus");
  }
  return make_circle_grid(M, 1.0);
}

cplx fourier_coeff(const ModelParams& params, const ContourGrid& grid, int n, Symbol symbol) {
  const KernelSet kernels(params);
  if (symbol == Symbol::Phi1) return fourier_coeff(params, grid, n - 1, Symbol::Phi);
  cplx sum = 0.0;
  for (int k = 0; k < grid.M; ++k) {
    const cplx value = kernels.phi(grid.nodes[k]);
    sum += grid.weights[k] * value * grid.node_power(k, -n - 1);
  }
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
    throw Error(ErrorCode::NonFinite, "Fourier coefficient is not finite");
  }
  return sum;
}

ToeplitzOracle::ToeplitzOracle(ModelParams params, int M)
    : ToeplitzOracle(params, make_symbol_grid(params, M)) {}

ToeplitzOracle::ToeplitzOracle(ModelParams params, ContourGrid grid)
    : kernels_(params), grid_(std::move(grid)) {
  if (!kernels_.annulus().contains(grid_.r)) {
    throw Error(ErrorCode::RadiusOutOfRange, "coefficient grid outside the symbol annulus");
  }
}

cplx ToeplitzOracle::coeff(int n, Symbol symbol) const {
  if (symbol == Symbol::Phi1) return coeff(n - 1, Symbol::Phi);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  }
  const cplx value = fourier_coeff(kernels_.params(), grid_, n, Symbol::Phi);
  std::unique_lock lock(mutex_);
  return cache_.emplace(n, value).first->second;
}

Eigen::MatrixXcd ToeplitzOracle::matrix(int size, Symbol symbol) const {
  Eigen::MatrixXcd m(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) m(i, j) = coeff(i - j, symbol);
  }
  return m;
}

DetResult ToeplitzOracle::det_D(int N) const {
  check_size(N, 1);
  return lu_determinant(matrix(N, Symbol::Phi));
}

DetResult ToeplitzOracle::det_Dhat(int N) const {
  if (params().regime() != Regime::Above) {
    throw Error(ErrorCode::RegimeMismatch, "B_N is built from the above-T_c symbol");
  }
  check_size(N, 1);
  return lu_determinant(matrix(N, Symbol::Phi1));
}

std::vector<double> ToeplitzOracle::solve_x(int N, Symbol symbol) const {
  if (symbol == Symbol::Phi1 && params().regime() != Regime::Above) {
    throw Error(ErrorCode::RegimeMismatch, "B_N is built from the above-T_c symbol");
  }
  check_size(N + 1, 1);
  const Eigen::MatrixXcd m = matrix(N + 1, symbol);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  if (lu.rcond() < 1e-14) throw Error(ErrorCode::SingularMatrix, "Toeplitz matrix is singular");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N + 1);
  rhs(0) = 1.0;
  const Eigen::VectorXcd x = lu.solve(rhs);
  std::vector<double> out(N + 1);
  for (int i = 0; i <= N; ++i) out[i] = x(i).real();
  return out;
}

DetResult det_DN(const ModelParams& params, int N, int M) {
  return ToeplitzOracle(params, M).det_D(N);
}

DetResult det_DhatN(const ModelParams& params, int N, int M) {
  return ToeplitzOracle(params, M).det_Dhat(N);
}

std::vector<double> solve_x(const ModelParams& params, int N, Symbol symbol, int M) {
  return ToeplitzOracle(params, M).solve_x(N, symbol);
}

std::vector<FixtureRecord> read_fixtures(std::istream& in) {
  std::vector<FixtureRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    FixtureRecord r;
    if (!(fields >> r.alpha1 >> r.alpha2 >> r.N >> r.value >> r.est_error >> r.route)) {
      throw Error(ErrorCode::InvalidArgument, "malformed fixture line: " + line);
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_fixture(std::ostream& out, const FixtureRecord& r) {
  const auto saved = out.precision();
  out << std::setprecision(17) << r.alpha1 << ' ' << r.alpha2 << ' ' << r.N << ' ' << r.value
      << ' ' << r.est_error << ' ' << r.route << '\n';
  out.precision(saved);
}

}  // namespace isingcorr
