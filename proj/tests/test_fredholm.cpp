#include <doctest.h>

#include <cmath>

#include "isingcorr/error.hpp"
#include "isingcorr/expansions.hpp"
#include "isingcorr/fredholm.hpp"
#include "oracles.hpp"

using namespace isingcorr;

namespace {
ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidArgument;
}

std::shared_ptr<const KernelMatrix> kernel(const ModelParams& p, int N, bool hat, int M = 64) {
  const KernelSet k(p);
  const ChainEngine engine(make_grid(p, M));
  return KernelMatrix::build(k, engine, N, hat);
}
}  // namespace

TEST_CASE("degenerate kernel has vanishing traces") {
  const auto p = ModelParams::direct(0.3, 0.3);
  const auto K = kernel(p, 2, false);
  // the factors D C are not small; their product integrates an analytic
  // function over the middle site and vanishes
  const ChainEngine engine(make_grid(p, 64));
  CHECK(engine.cauchy().norm() > 1.0);
  CHECK(K->matrix().norm() < 1e-12);
  for (int n = 1; n <= 4; ++n) CHECK(std::abs(K->trace_power(n) / double(n)) < 1e-13);
}

TEST_CASE("traces are closed chains") {
  const auto p = ModelParams::direct(0.0, 0.5);
  const KernelSet k(p);
  const auto grid = make_grid(p, 64);
  const ChainEngine engine(grid);
  const auto K = KernelMatrix::build(k, engine, 2, false);
  auto qq = [&](cplx z) { return pair_weight(k, WeightFamily::QQ, z); };
  auto pp = [&](cplx z) { return pair_weight(k, WeightFamily::PP, z); };
  CHECK(std::abs(K->trace_power(1) - chain_integral(grid, {2, 2, qq, pp})) < 1e-12);
  CHECK(std::abs(K->trace_power(2) - chain_integral(grid, {4, 2, qq, pp})) < 1e-11);
  // and the double loop written out independently
  const oracle::Grid og(64, grid.r);
  auto oq = [](cplx z) { return oracle::Q(0, 0.5, z) * oracle::Q(0, 0.5, 1.0 / z); };
  auto op = [](cplx z) { return oracle::P(0, 0.5, z) * oracle::P(0, 0.5, 1.0 / z); };
  CHECK(std::abs(K->trace_power(1) - oracle::closed_pair(og, 2, oq, op)) < 1e-13);
  const auto ps = K->power_sums(3);
  REQUIRE(ps.size() == 4);
  CHECK(std::abs(ps[3] - K->trace_power(3)) < 1e-15);
}

TEST_CASE("log det against the determinant") {
  const auto p = ModelParams::direct(0.0, 0.5);
  const ExpansionContext ctx(p);
  for (int N = 1; N <= 4; ++N) {
    const auto K = ctx.kernel_matrix(N, false);
    CHECK(K->spectral_radius() < 1.0);
    const double via = s_infinity(p) * std::exp(log_det_expansion(*K));
    CHECK(std::abs(via - oracle::series_det(0.0, 0.5, N)) < 1e-8);
  }
}

TEST_CASE("form factor coefficients") {
  for (double a2 : {0.4, 0.5}) {
    const ExpansionContext ctx(ModelParams::direct(0.0, a2));
    for (int N = 1; N <= 3; ++N) {
      const auto K = ctx.kernel_matrix(N, false);
      const auto ff = ff_coeffs(*K, 3);
      CHECK(ff.values[0] == 1.0);
      CHECK(ff.method == SpectralMethod::Eigenvalues);
      CHECK(ff.imag_residue < 1e-10);
      cplx sum = 0.0;
      for (const cplx& l : K->eigenvalues()) sum += l;
      CHECK(std::abs(ff.values[1] + sum.real()) < 1e-15);
      CHECK(std::abs(ff.values[1] - f_2n(ctx, N, 1, false, Method::Direct).value) < 1e-11);
      CHECK(std::abs(ff.values[2] - f_2n(ctx, N, 2, false, Method::Direct).value) < 1e-10);
    }
  }
}

TEST_CASE("eigenvalue and Newton routes agree") {
  for (double a2 : {0.4, 0.5, 0.6}) {
    for (int M : {16, 32, 64}) {
      const auto K = kernel(ModelParams::direct(0.0, a2), 1, false, M);
      const auto eig = ff_coeffs(*K, 6, SpectralMethod::Eigenvalues);
      const auto newton = ff_coeffs(*K, 6, SpectralMethod::PowerSums);
      CHECK(newton.method == SpectralMethod::PowerSums);
      for (int n = 0; n <= 6; ++n) CHECK(std::abs(eig.values[n] - newton.values[n]) < 1e-10);
    }
  }
}

TEST_CASE("exponential and series forms differ at fourth grade") {
  const ExpansionContext ctx(ModelParams::direct(0.0, 0.5));
  const auto K = ctx.kernel_matrix(1, false);
  const auto ff = ff_coeffs(*K, 4);
  double F = 0.0;
  for (int n = 1; n <= 3; ++n) F -= K->trace_power(n).real() / n;
  const double F4 = -K->trace_power(4).real() / 4;
  const double series = ff.values[0] + ff.values[1] + ff.values[2] + ff.values[3];
  // the two truncations first differ at grade four
  const double gap = std::abs(std::exp(F) - series);
  CHECK(gap < 10.0 * (std::abs(ff.values[4]) + std::abs(F4)));
  CHECK(gap > 0.1 * std::abs(F4));
}

TEST_CASE("hat kernel above T_c") {
  const auto p = ModelParams::direct(0.0, 2.5);
  const auto K = kernel(p, 2, true);
  CHECK(K->spectral_radius() < 1.0);
  CHECK(code_of([&] { kernel(p, 2, false); }) == ErrorCode::RegimeMismatch);
  CHECK(code_of([] { kernel(ModelParams::direct(0.0, 0.5), 2, true); }) ==
        ErrorCode::RegimeMismatch);
}

TEST_CASE("spectral radius guard and symmetric functions") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = 0.5;
  m(2, 2) = 0.25;
  const KernelMatrix K(m);
  CHECK(K.spectral_radius() == doctest::Approx(2.0));
  CHECK(code_of([&] { log_det_expansion(K); }) == ErrorCode::SpectralRadiusExceeded);
  const auto ff = ff_coeffs(K, 3);
  // (1 - 2x)(1 - 0.5x)(1 - 0.25x)
  CHECK(ff.values[1] == doctest::Approx(-2.75));
  CHECK(ff.values[2] == doctest::Approx(1.625));
  CHECK(ff.values[3] == doctest::Approx(-0.25));
  CHECK(code_of([&] { ff_coeffs(K, 4); }) == ErrorCode::InvalidArgument);

  const cplx roots[] = {1.0, 2.0, 3.0};
  const auto e = elementary_from_roots(roots, 3);
  CHECK(e[1] == cplx(6.0));
  CHECK(e[2] == cplx(11.0));
  CHECK(e[3] == cplx(6.0));
  const cplx p[] = {0.0, 6.0, 14.0, 36.0};
  const auto e2 = elementary_from_power_sums(p, 3);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(e2[k] - e[k]) < 1e-14);
}

TEST_CASE("non-finite kernel") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = NAN;
  CHECK(code_of([&] { KernelMatrix{m}; }) == ErrorCode::NonFinite);
}
