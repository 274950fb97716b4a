#include "isingcorr/expansions.hpp"

#include <cmath>

#include "isingcorr/error.hpp"

namespace isingcorr {

namespace {

void require_regime(const ExpansionContext& ctx, Regime regime, const char* what) {
  if (ctx.params().regime() != regime) throw Error(ErrorCode::RegimeMismatch, what);
}

void require_nonnegative(int N, int n) {
  if (N < 0 || n < 0) throw Error(ErrorCode::InvalidArgument, "N and n must be non-negative");
}

double sign_power(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <class Raw>
ExpansionTerm make_term(const ExpansionContext& ctx, int order, int N, Method method, Raw raw) {
  const cplx value = raw(ctx);
  ExpansionTerm term;
  term.order = order;
  term.N = N;
  term.value = value.real();
  term.imag_residue = std::abs(value.imag());
  term.method = method;
  if (const ExpansionContext* coarse = ctx.coarse()) {
    term.est_error = std::abs(raw(*coarse) - value);
  }
  return term;
}

cplx raw_F(const ExpansionContext& ctx, int N, int n, bool hat) {
  return -ctx.kernel_matrix(N, hat)->trace_power(n) / static_cast<double>(n);
}

cplx raw_phi(const ExpansionContext& ctx, int N, int n) {
  const auto odd = ctx.site(WeightFamily::QQ, N + 1);
  const auto even = ctx.site(WeightFamily::PP, N + 1);
  std::vector<cplx> ends(ctx.grid().M);
  for (int k = 0; k < ctx.grid().M; ++k) ends[k] = 1.0 / ctx.grid().nodes[k];
  return -ctx.engine().open(odd, even, 2 * n, ends);
}

cplx raw_G(const ExpansionContext& ctx, int N, int n) {
  const auto odd = ctx.site(WeightFamily::PhatPhat, N + 1);
  const auto even = ctx.site(WeightFamily::QhatQhat, N + 1);
  std::vector<cplx> ends(ctx.grid().M);
  for (int k = 0; k < ctx.grid().M; ++k) ends[k] = 1.0 / ctx.grid().nodes[k];
  return ctx.engine().open(odd, even, 2 * n + 1, ends);
}

cplx raw_f_spectral(const ExpansionContext& ctx, int N, int n, bool hat) {
  if (n == 0) return 1.0;
  const auto coeffs = ff_coeffs(*ctx.kernel_matrix(N, hat), n);
  return coeffs.values[n];
}

// (-1)^n/(n!)^2 sum over odd tuples o and even tuples e of
// prod w_o prod w_e det[C(o_i, e_j)]^2.
cplx raw_f_direct(const ExpansionContext& ctx, int N, int n, bool hat) {
  if (n == 0) return 1.0;
  const auto wo = ctx.site(hat ? WeightFamily::QhatQhat : WeightFamily::QQ, N);
  const auto we = ctx.site(hat ? WeightFamily::PhatPhat : WeightFamily::PP, N);
  const auto& C = ctx.engine().cauchy();
  const int M = ctx.grid().M;
  cplx sum = 0.0;
  if (n == 1) {
    for (int o = 0; o < M; ++o) {
      for (int e = 0; e < M; ++e) sum += wo[o] * we[e] * C(o, e) * C(o, e);
    }
    return -sum;
  }
  for (int o1 = 0; o1 < M; ++o1) {
    for (int o2 = 0; o2 < M; ++o2) {
      const cplx wo12 = wo[o1] * wo[o2];
      cplx inner = 0.0;
      for (int e1 = 0; e1 < M; ++e1) {
        for (int e2 = 0; e2 < M; ++e2) {
          const cplx det = C(o1, e1) * C(o2, e2) - C(o1, e2) * C(o2, e1);
          inner += we[e1] * we[e2] * det * det;
        }
      }
      sum += wo12 * inner;
    }
  }
  return sum / 4.0;
}

cplx raw_f_odd_combination(const ExpansionContext& ctx, int N, int n) {
  cplx sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += raw_G(ctx, N, k) * raw_f_spectral(ctx, N + 1, n - k, true);
  return sum;
}

// (-1)^n/(n!(n+1)!) sum prod_odd u z^{N-1} PhPh prod_even u z^{N+1} QhQh
// [prod 1/(1 - x y) Vandermonde(x) Vandermonde(y)]^2.
cplx raw_f_odd_direct(const ExpansionContext& ctx, int N, int n) {
  const auto wo = ctx.site(WeightFamily::PhatPhat, N - 1);
  const auto we = ctx.site(WeightFamily::QhatQhat, N + 1);
  const int M = ctx.grid().M;
  const auto& z = ctx.grid().nodes;
  cplx sum = 0.0;
  if (n == 0) {
    for (int o = 0; o < M; ++o) sum += wo[o];
    return sum;
  }
  const auto& C = ctx.engine().cauchy();
  for (int o1 = 0; o1 < M; ++o1) {
    for (int o3 = 0; o3 < M; ++o3) {
      const cplx gap = z[o1] - z[o3];
      cplx inner = 0.0;
      for (int e = 0; e < M; ++e) {
        const cplx amp = C(o1, e) * C(o3, e) * gap;
        inner += we[e] * amp * amp;
      }
      sum += wo[o1] * wo[o3] * inner;
    }
  }
  return -sum / 2.0;
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::ChainQuadrature: return "chain";
    case Method::EigenSymmetric: return "eigen";
    case Method::Combination: return "combination";
    case Method::Direct: return "direct";
  }
  return "unknown";
}

const char* to_string(Route route) noexcept {
  switch (route) {
    case Route::Determinant: return "det";
    case Route::Exponential: return "exp";
    case Route::FormFactor: return "ff";
  }
  return "unknown";
}

Route parse_route(const std::string& name) {
  if (name == "det") return Route::Determinant;
  if (name == "exp") return Route::Exponential;
  if (name == "ff") return Route::FormFactor;
  throw Error(ErrorCode::InvalidArgument, "unknown route '" + name + "'");
}

ExpansionContext::ExpansionContext(ModelParams params, int M, std::optional<double> radius)
    : kernels_(params), engine_(make_grid(params, M, radius)) {}

std::shared_ptr<const KernelMatrix> ExpansionContext::kernel_matrix(int N, bool hat) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = matrices_.find({N, hat}); it != matrices_.end()) return it->second;
  }
  auto built = KernelMatrix::build(kernels_, engine_, N, hat);
  std::lock_guard lock(mutex_);
  return matrices_.emplace(std::make_pair(N, hat), std::move(built)).first->second;
}

std::vector<cplx> ExpansionContext::site(WeightFamily family, int power) const {
  return engine_.site_vector([&](cplx z) { return pair_weight(kernels_, family, z); }, power);
}

const ExpansionContext* ExpansionContext::coarse() const {
  if (grid().M / 2 < 8) return nullptr;
  std::lock_guard lock(mutex_);
  if (!coarse_) coarse_ = std::make_unique<ExpansionContext>(params(), grid().M / 2, grid().r);
  return coarse_.get();
}

const ToeplitzOracle& ExpansionContext::oracle() const {
  std::lock_guard lock(mutex_);
  if (!oracle_) oracle_ = std::make_unique<ToeplitzOracle>(params());
  return *oracle_;
}

ExpansionTerm F_2n(const ExpansionContext& ctx, int N, int n, bool hat) {
  require_regime(ctx, hat ? Regime::Above : Regime::Below,
                 hat ? "F^hat needs T > T_c" : "F needs T < T_c");
  require_nonnegative(N, n);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "F^(2n) needs n >= 1");
  return make_term(ctx, 2 * n, N, Method::ChainQuadrature,
                   [&](const ExpansionContext& c) { return raw_F(c, N, n, hat); });
}

ExpansionTerm Ftilde_2n(const ExpansionContext& ctx, int N, int n) {
  require_regime(ctx, Regime::Below, "F~ needs T < T_c");
  require_nonnegative(N, n);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "F~^(2n) needs n >= 1");
  return make_term(ctx, 2 * n, N, Method::ChainQuadrature, [&](const ExpansionContext& c) {
    return raw_F(c, N, n, false) - raw_F(c, N + 1, n, false);
  });
}

ExpansionTerm phi_2n(const ExpansionContext& ctx, int N, int n) {
  require_regime(ctx, Regime::Below, "phi^(2n) needs T < T_c");
  require_nonnegative(N, n);
  if (n == 0) return {0, N, 1.0, 0.0, Method::ChainQuadrature, 0.0};
  return make_term(ctx, 2 * n, N, Method::ChainQuadrature,
                   [&](const ExpansionContext& c) { return raw_phi(c, N, n); });
}

ExpansionTerm G_2n1(const ExpansionContext& ctx, int N, int n) {
  require_regime(ctx, Regime::Above, "G needs T > T_c");
  require_nonnegative(N, n);
  return make_term(ctx, 2 * n + 1, N, Method::ChainQuadrature,
                   [&](const ExpansionContext& c) { return raw_G(c, N, n); });
}

ExpansionTerm f_2n(const ExpansionContext& ctx, int N, int n, bool hat, Method method) {
  require_regime(ctx, hat ? Regime::Above : Regime::Below,
                 hat ? "f^hat needs T > T_c" : "f needs T < T_c");
  require_nonnegative(N, n);
  if (n == 0) return {0, N, 1.0, 0.0, method, 0.0};
  if (method == Method::Direct) {
    if (n > 2) throw Error(ErrorCode::MethodUnavailable, "direct f^(2n) is limited to n <= 2");
    return make_term(ctx, 2 * n, N, method,
                     [&](const ExpansionContext& c) { return raw_f_direct(c, N, n, hat); });
  }
  if (method != Method::EigenSymmetric) {
    throw Error(ErrorCode::MethodUnavailable, "f^(2n) supports eigen and direct");
  }
  return make_term(ctx, 2 * n, N, method,
                   [&](const ExpansionContext& c) { return raw_f_spectral(c, N, n, hat); });
}

ExpansionTerm f_2n1(const ExpansionContext& ctx, int N, int n, Method method) {
  require_regime(ctx, Regime::Above, "f^(2n+1) needs T > T_c");
  require_nonnegative(N, n);
  if (method == Method::Direct) {
    if (n > 1) throw Error(ErrorCode::MethodUnavailable, "direct f^(2n+1) is limited to n <= 1");
    return make_term(ctx, 2 * n + 1, N, method,
                     [&](const ExpansionContext& c) { return raw_f_odd_direct(c, N, n); });
  }
  if (method != Method::Combination) {
    throw Error(ErrorCode::MethodUnavailable, "f^(2n+1) supports combination and direct");
  }
  return make_term(ctx, 2 * n + 1, N, method,
                   [&](const ExpansionContext& c) { return raw_f_odd_combination(c, N, n); });
}

ComparisonEntry correlation(const ExpansionContext& ctx, int N, Route route, int n_max) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "separation N must be >= 1");
  if (n_max < 0 || n_max > kMaxOrders) throw Error(ErrorCode::InvalidArgument, "n_max out of range");
  ComparisonEntry entry;
  entry.N = N;
  entry.route = route;
  const bool above = ctx.params().regime() == Regime::Above;

  if (route == Route::Determinant) {
    const DetResult fine = ctx.oracle().det_D(N);
    const DetResult half = ToeplitzOracle(ctx.params(), ctx.oracle().grid().M / 2).det_D(N);
    entry.value = fine.value;
    entry.est_error = std::abs(fine.value - half.value);
    return entry;
  }

  if (!above) {
    const double prefactor = s_infinity(ctx.params());
    if (route == Route::Exponential) {
      double exponent = 0.0;
      for (int n = 1; n <= n_max; ++n) {
        entry.terms.push_back(F_2n(ctx, N, n));
        exponent += entry.terms.back().value;
      }
      entry.value = prefactor * std::exp(exponent);
      entry.est_error = n_max > 0 ? entry.value * std::abs(entry.terms.back().value) : 0.0;
    } else {
      double sum = 0.0;
      for (int n = 0; n <= n_max; ++n) {
        entry.terms.push_back(f_2n(ctx, N, n));
        sum += entry.terms.back().value;
      }
      entry.value = prefactor * sum;
      entry.est_error = prefactor * std::abs(entry.terms.back().value);
    }
    return entry;
  }

  const double prefactor = s_hat_infinity(ctx.params());
  if (route == Route::Exponential) {
    double g_sum = 0.0;
    for (int m = 0; m <= n_max; ++m) {
      entry.terms.push_back(G_2n1(ctx, N, m));
      g_sum += entry.terms.back().value;
    }
    const double last_g = std::abs(entry.terms.back().value);
    double exponent = 0.0;
    double last_f = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      entry.terms.push_back(F_2n(ctx, N + 1, n, true));
      exponent += entry.terms.back().value;
      last_f = std::abs(entry.terms.back().value);
    }
    entry.value = prefactor * g_sum * std::exp(exponent);
    entry.est_error = prefactor * std::exp(exponent) * last_g + std::abs(entry.value) * last_f;
  } else {
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      entry.terms.push_back(f_2n1(ctx, N, n));
      sum += entry.terms.back().value;
    }
    entry.value = prefactor * sum;
    entry.est_error = prefactor * std::abs(entry.terms.back().value);
  }
  return entry;
}

}  // namespace isingcorr
