#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingcorr/error.hpp"
#include "isingcorr/kernels.hpp"
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

cplx random_point(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmin + (rmax - rmin) * u(rng), 2.0 * std::numbers::pi * u(rng));
}
}  // namespace

TEST_CASE("degenerate symbol is one") {
  const KernelSet k(ModelParams::direct(0.3, 0.3));
  for (int j = 0; j < 16; ++j) {
    const cplx z = std::polar(0.9, 0.4 * j);
    CHECK(std::abs(k.phi(z) - 1.0) < 1e-15);
  }
  CHECK(s_infinity(ModelParams::direct(0.3, 0.3)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("phi below T_c") {
  const KernelSet k(ModelParams::direct(0.0, 0.5));
  CHECK(std::abs(k.phi(1.0) - 1.0) < 1e-15);
  const cplx z(0.0, 0.9);
  const cplx factored = 1.0 / (k.P(z) * k.Q(1.0 / z));
  CHECK(std::abs(k.phi(z) - factored) < 1e-13 * std::abs(factored));
  // against the definition written out independently
  const cplx direct = std::sqrt((1.0 - 0.5 / z) / (1.0 - 0.5 * z));
  CHECK(std::abs(k.phi(z) - direct) < 1e-14);
  CHECK(std::abs(k.phi1(z) - z * k.phi(z)) < 1e-15);
}

TEST_CASE("P and Q values") {
  const KernelSet k(ModelParams::direct(0.0, 0.5));
  CHECK(k.P(0.0) == cplx(1.0));
  CHECK(k.Q(0.0) == cplx(1.0));
  CHECK(k.P(1.0).real() == doctest::Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(std::abs(k.P(1.0).imag()) == 0.0);
  const KernelSet a(ModelParams::direct(0.0, 2.5));
  CHECK(std::abs(a.Phat(1.0) * a.Qhat(1.0) - 1.0) < 1e-15);
  CHECK(a.Phat(0.0) == cplx(1.0));
  CHECK(a.Qhat(0.0) == cplx(1.0));
}

TEST_CASE("szego limits") {
  CHECK(s_infinity(ModelParams::direct(0.0, 0.5)) ==
        doctest::Approx(0.9306049).epsilon(1e-7));
  CHECK(s_infinity(ModelParams::direct(0.0, 0.5)) ==
        doctest::Approx(std::pow(0.75, 0.25)).epsilon(1e-15));
  CHECK(s_hat_infinity(ModelParams::direct(0.0, 2.0)) ==
        doctest::Approx(0.9306049).epsilon(1e-7));
  const double a1 = 0.2, a2 = 0.5;
  CHECK(s_infinity(ModelParams::direct(a1, a2)) ==
        doctest::Approx(std::pow((1 - a1 * a1) * (1 - a2 * a2) / std::pow(1 - a1 * a2, 2), 0.25))
            .epsilon(1e-15));
  const double b1 = 0.2, b2 = 3.0;
  CHECK(s_hat_infinity(ModelParams::direct(b1, b2)) ==
        doctest::Approx(std::pow((1 - b1 * b1) * (1 - 1 / (b2 * b2)) * std::pow(1 - b1 / b2, 2),
                                 0.25))
            .epsilon(1e-15));
  CHECK(code_of([] { s_infinity(ModelParams::direct(0.0, 2.0)); }) == ErrorCode::RegimeMismatch);
  CHECK(code_of([] { s_hat_infinity(ModelParams::direct(0.0, 0.5)); }) ==
        ErrorCode::RegimeMismatch);
}

TEST_CASE("reciprocal pairs at random points") {
  std::mt19937_64 rng(11);
  const KernelSet below(ModelParams::direct(0.2, 0.5));
  const KernelSet above(ModelParams::direct(0.2, 3.0));
  double worst = 0.0, worst_hat = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const cplx z = random_point(rng, 0.0, 1.0 / 0.5 * 0.999);
    worst = std::max(worst, std::abs(below.P(z) * below.Q(z) - 1.0));
    const cplx w = random_point(rng, 0.0, 3.0 * 0.999);
    worst_hat = std::max(worst_hat, std::abs(above.Phat(w) * above.Qhat(w) - 1.0));
  }
  CHECK(worst < 1e-13);
  CHECK(worst_hat < 1e-13);
}

TEST_CASE("factorization and symmetries on the annulus") {
  std::mt19937_64 rng(12);
  const double a1 = 0.2, a2 = 0.5;
  const KernelSet below(ModelParams::direct(a1, a2));
  const KernelSet above(ModelParams::direct(0.2, 3.0));
  for (int i = 0; i < 2000; ++i) {
    const cplx z = random_point(rng, a2 * 1.001, 0.999);
    const cplx f = below.phi(z);
    const cplx factored = 1.0 / (below.P(z) * below.Q(1.0 / z));
    CHECK(std::abs(f - factored) < 1e-12 * std::abs(factored));
    const cplx ref = oracle::Q(a1, a2, z) * oracle::P(a1, a2, 1.0 / z);
    CHECK(std::abs(f - ref) < 1e-13);
    CHECK(std::abs(below.phi(std::conj(z)) - std::conj(f)) < 1e-15);

    const cplx w = random_point(rng, 1.0 / 3.0 * 1.001, 3.0 * 0.999);
    CHECK(std::abs(above.phi1(w) - w * above.phi(w)) < 1e-14 * std::max(1.0, std::abs(w)));
    CHECK(std::abs(above.phi(std::conj(w)) - std::conj(above.phi(w))) < 1e-15);
    const cplx ref1 = -oracle::Qhat(0.2, 3.0, w) * oracle::Phat(0.2, 3.0, 1.0 / w);
    CHECK(std::abs(above.phi1(w) - ref1) < 1e-13);
  }
}

TEST_CASE("phi1 branch above T_c") {
  const KernelSet k(ModelParams::direct(0.0, 2.5));
  CHECK(std::abs(k.phi1(1.0) + 1.0) < 1e-15);
}

TEST_CASE("annulus and branch errors") {
  const KernelSet below(ModelParams::direct(0.0, 0.5));
  CHECK(below.annulus().inner == 0.5);
  CHECK(below.annulus().outer == 2.0);
  CHECK(code_of([&] { below.phi(0.4); }) == ErrorCode::BranchViolation);
  CHECK(code_of([&] { below.phi(cplx(0.0, 2.5)); }) == ErrorCode::BranchViolation);
  CHECK(code_of([&] { below.P(3.0); }) == ErrorCode::BranchViolation);
  CHECK(code_of([&] { below.Phat(0.5); }) == ErrorCode::RegimeMismatch);

  const KernelSet above(ModelParams::direct(0.2, 3.0));
  CHECK(above.annulus().inner == doctest::Approx(1.0 / 3.0));
  CHECK(above.annulus().outer == doctest::Approx(3.0));
  CHECK(code_of([&] { above.phi(0.3); }) == ErrorCode::BranchViolation);
  CHECK(code_of([&] { above.Phat(3.5); }) == ErrorCode::BranchViolation);
  CHECK(code_of([&] { above.Q(0.5); }) == ErrorCode::RegimeMismatch);
}

TEST_CASE("factor real parts stay positive inside the annulus") {
  CHECK(KernelSet(ModelParams::direct(0.0, 0.5)).min_factor_real_part(0.75) > 0.0);
  CHECK(KernelSet(ModelParams::direct(0.2, 3.0)).min_factor_real_part(0.6) > 0.0);
}

TEST_CASE("pair weights") {
  const KernelSet k(ModelParams::direct(0.1, 0.5));
  const cplx z = std::polar(0.8, 0.3);
  CHECK(std::abs(pair_weight(k, WeightFamily::QQ, z) - k.Q(z) * k.Q(1.0 / z)) < 1e-15);
  CHECK(std::abs(pair_weight(k, WeightFamily::PP, z) - k.P(z) * k.P(1.0 / z)) < 1e-15);
  CHECK(code_of([&] { pair_weight(k, WeightFamily::QhatQhat, z); }) ==
        ErrorCode::RegimeMismatch);
}
