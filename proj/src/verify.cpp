#include "isingcorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "isingcorr/combinatorics.hpp"
#include "isingcorr/error.hpp"
#include "isingcorr/expansions.hpp"
#include "isingcorr/fredholm.hpp"
#include "isingcorr/toeplitz.hpp"

namespace isingcorr {

namespace {

std::string label(const ModelParams& p, int N) {
  std::ostringstream os;
  os << "alpha1=" << p.alpha1() << " alpha2=" << p.alpha2() << " N=" << N;
  return os.str();
}

CheckRecord check(std::string name, std::string params, double residual, double tolerance) {
  return {std::move(name), std::move(params), residual, tolerance, residual < tolerance};
}

std::vector<cplx> random_points(std::mt19937_64& rng, int count, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> pts(count);
  for (cplx& z : pts) {
    z = std::polar(radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  }
  return pts;
}

void lemma1(const VerifyOptions& opt, std::vector<CheckRecord>& out) {
  for (const double a2 : {0.4, 0.6}) {
    const ExpansionContext ctx(ModelParams::diagonal(a2), std::max(opt.M, 128));
    for (int N = 1; N <= 5; ++N) {
      const double x0 = ctx.oracle().solve_x(N, Symbol::Phi)[0];
      const double partial = 1.0 + phi_2n(ctx, N, 1).value + phi_2n(ctx, N, 2).value;
      const double omitted = std::abs(phi_2n(ctx, N, 3).value);
      out.push_back(check("lemma1.x0", label(ctx.params(), N), std::abs(x0 - partial),
                          10.0 * omitted + 1e-14));
    }
  }
}

void lemma2(const VerifyOptions& opt, std::vector<CheckRecord>& out) {
  const ExpansionContext ctx(ModelParams::diagonal(0.5), opt.M);
  for (int N = 1; N <= 4; ++N) {
    for (const int n : {2, 3}) {
      double rhs = 0.0;
      for (int l = 1; l <= n; ++l) {
        rhs += l * Ftilde_2n(ctx, N, l).value * phi_2n(ctx, N, n - l).value;
      }
      const double lhs = n * phi_2n(ctx, N, n).value;
      out.push_back(check("lemma2.n=" + std::to_string(n), label(ctx.params(), N),
                          std::abs(lhs - rhs), 1e-9));
    }
  }
}

void cauchy(const VerifyOptions& opt, std::vector<CheckRecord>& out, IdentityVariant variant) {
  std::mt19937_64 rng(opt.seed);
  const bool above = variant == IdentityVariant::Above;
  for (int trial = 0; trial < opt.trials; ++trial) {
    const int n = above ? 1 + trial % 2 : 1 + trial % 3;
    const auto odd = random_points(rng, above ? n + 1 : n, 0.9);
    const auto even = random_points(rng, n, 0.9);
    const double residual = cauchy_identity_residual(odd, even, variant);
    out.push_back(check(above ? "perm" : "cauchy",
                        "n=" + std::to_string(n) + " trial=" + std::to_string(trial), residual,
                        1e-12));
  }
}

void resum(const VerifyOptions& opt, std::vector<CheckRecord>& out) {
  const ExpansionContext ctx(ModelParams::diagonal(0.5), opt.M);
  for (int N = 1; N <= 3; ++N) {
    std::vector<double> F(4, 0.0);
    for (int n = 1; n <= 3; ++n) F[n] = F_2n(ctx, N, n).value;
    for (int n = 1; n <= 3; ++n) {
      const double f = f_2n(ctx, N, n).value;
      out.push_back(check("resum.f" + std::to_string(2 * n), label(ctx.params(), N),
                          std::abs(f - form_factor_from_exponential(F, n)), 1e-10));
    }
  }
}

void fredholm(const VerifyOptions& opt, std::vector<CheckRecord>& out) {
  for (const double a2 : {0.4, 0.5}) {
    const ExpansionContext ctx(ModelParams::diagonal(a2), opt.M);
    for (int N = 1; N <= 3; ++N) {
      for (int n = 1; n <= 2; ++n) {
        const double spectral = f_2n(ctx, N, n).value;
        const double direct = f_2n(ctx, N, n, false, Method::Direct).value;
        out.push_back(check("fredholm.f" + std::to_string(2 * n), label(ctx.params(), N),
                            std::abs(spectral - direct), 1e-10));
      }
      const double via_logdet =
          s_infinity(ctx.params()) * std::exp(log_det_expansion(*ctx.kernel_matrix(N, false)));
      out.push_back(check("fredholm.logdet", label(ctx.params(), N),
                          std::abs(via_logdet - ctx.oracle().det_D(N).value), 1e-7));
    }
  }
}

void szego(const VerifyOptions&, std::vector<CheckRecord>& out) {
  {
    const auto params = ModelParams::diagonal(0.5);
    const ToeplitzOracle oracle(params);
    const double limit = s_infinity(params);
    double previous = std::abs(oracle.det_D(2).value - limit);
    for (int N = 3; N <= 10; ++N) {
      const double gap = std::abs(oracle.det_D(N).value - limit);
      out.push_back(check("szego.below", label(params, N), gap, previous));
      previous = gap;
    }
  }
  {
    const auto params = ModelParams::diagonal(2.5);
    const ToeplitzOracle oracle(params);
    const double limit = s_hat_infinity(params);
    auto gap_at = [&](int N) {
      return std::abs((N % 2 == 0 ? 1.0 : -1.0) * oracle.det_Dhat(N).value - limit);
    };
    double previous = gap_at(2);
    for (int N = 3; N <= 10; ++N) {
      const double gap = gap_at(N);
      out.push_back(check("szego.above", label(params, N), gap, previous));
      previous = gap;
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma1", "lemma2", "cauchy", "perm",
                                                 "resum",  "fredholm", "szego"};
  return names;
}

std::vector<CheckRecord> run_suite(const std::string& name, const VerifyOptions& options) {
  std::vector<CheckRecord> out;
  if (name == "all") {
    for (const auto& suite : suite_names()) {
      auto part = run_suite(suite, options);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (name == "lemma1") lemma1(options, out);
  else if (name == "lemma2") lemma2(options, out);
  else if (name == "cauchy") cauchy(options, out, IdentityVariant::Below);
  else if (name == "perm") cauchy(options, out, IdentityVariant::Above);
  else if (name == "resum") resum(options, out);
  else if (name == "fredholm") fredholm(options, out);
  else if (name == "szego") szego(options, out);
  else throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
  return out;
}

}  // namespace isingcorr
