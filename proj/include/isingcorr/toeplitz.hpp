#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "isingcorr/kernels.hpp"
#include "isingcorr/params.hpp"
#include "isingcorr/quadrature.hpp"

namespace isingcorr {

enum class Symbol { Phi, Phi1 };

/// Default node count of the coefficient grid. Coefficients are taken on the
/// unit circle, where aliasing of a_n decays like rho^{M - |n|}.
inline constexpr int kOracleNodes = 512;
inline constexpr int kMaxToeplitzSize = 64;

/// Unit-circle grid used for Fourier coefficients of the symbol.
ContourGrid make_symbol_grid(const ModelParams& params, int M = kOracleNodes);

/// a_n = (1/2 pi i) \oint phi(z) z^{-n-1} dz, or b_n for phi1.
cplx fourier_coeff(const ModelParams& params, const ContourGrid& grid, int n, Symbol symbol);

struct DetResult {
  double value = 0.0;
  /// |Im det|; should stay at rounding level for real alphas.
  double imag_residue = 0.0;
};

/// Toeplitz matrices A_N (symbol phi) and B_N (symbol phi1 = z phi), their
/// determinants and the first-column solves used by the ratio identities.
///
/// Coefficients are cached per instance (fixed params and grid). Readers share
/// the cache; insertion takes the exclusive lock.
class ToeplitzOracle {
 public:
  explicit ToeplitzOracle(ModelParams params, int M = kOracleNodes);
  ToeplitzOracle(ModelParams params, ContourGrid grid);

  const ModelParams& params() const noexcept { return kernels_.params(); }
  const ContourGrid& grid() const noexcept { return grid_; }

  /// a_n for Phi; b_n := a_{n-1} for Phi1.
  cplx coeff(int n, Symbol symbol = Symbol::Phi) const;

  /// T[i][j] = c_{i-j}, size x size.
  Eigen::MatrixXcd matrix(int size, Symbol symbol) const;

  DetResult det_D(int N) const;
  /// det B_N; above T_c only.
  DetResult det_Dhat(int N) const;

  /// Solution of T_{N+1} x = e_0 with T = A (Phi) or B (Phi1).
  std::vector<double> solve_x(int N, Symbol symbol) const;

 private:
  KernelSet kernels_;
  ContourGrid grid_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<int, cplx> cache_;
};

DetResult det_DN(const ModelParams& params, int N, int M = kOracleNodes);
DetResult det_DhatN(const ModelParams& params, int N, int M = kOracleNodes);
std::vector<double> solve_x(const ModelParams& params, int N, Symbol symbol,
                            int M = kOracleNodes);

/// One line of the determinant fixture file: `alpha1 alpha2 N value est_error route`.
struct FixtureRecord {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  int N = 0;
  double value = 0.0;
  double est_error = 0.0;
  std::string route;
};

/// Skips blank lines and lines starting with '#'.
std::vector<FixtureRecord> read_fixtures(std::istream& in);
void write_fixture(std::ostream& out, const FixtureRecord& record);

}  // namespace isingcorr
