// corr: correlation tables, identity checks and convergence sweeps.
//
// Exit codes: 0 ok, 1 a verify check failed, 2 usage / invalid parameters,
// 3 numerical failure (no convergence; the report is still written).

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "isingcorr/error.hpp"
#include "isingcorr/expansions.hpp"
#include "isingcorr/report.hpp"
#include "isingcorr/verify.hpp"

using namespace isingcorr;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kMaxSeparation = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool diagonal = false;
  bool row = false;
  std::optional<double> K1, K2, alpha2;
  std::vector<double> direct;

  std::vector<std::string> N = {"1..6"};
  int orders = 3;
  std::vector<std::string> routes = {"det", "exp", "ff"};
  std::string format = "csv";
  int M = 0;
  std::optional<double> radius;
  std::string output;
  std::optional<double> tol;
  int threads = 0;

  std::string suite = "all";
  int trials = 100;
  std::uint64_t seed = 0;

  std::vector<int> M_list;
  std::vector<int> order_list;
};

ModelParams make_params(const Options& o) {
  const bool couplings = o.K1 || o.K2;
  if (!o.direct.empty()) {
    if (o.diagonal || o.row || couplings || o.alpha2) {
      throw UsageError("--direct cannot be combined with --diagonal/--row/--K1/--K2/--alpha2");
    }
    return ModelParams::direct(o.direct[0], o.direct[1]);
  }
  if (o.diagonal == o.row) throw UsageError("give exactly one of --diagonal, --row, --direct");
  if (o.alpha2) {
    if (o.row || couplings) throw UsageError("--alpha2 goes with --diagonal alone");
    return ModelParams::diagonal(*o.alpha2);
  }
  if (!o.K1 || !o.K2) throw UsageError("--K1 and --K2 are both required");
  return ModelParams::from_couplings(o.row ? CorrelationKind::Row : CorrelationKind::Diagonal,
                                     *o.K1, *o.K2);
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

// items "3" or "1..6"
std::vector<int> parse_separations(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const auto& spec : items) {
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
      const int lo = parse_int(spec.substr(0, dots)), hi = parse_int(spec.substr(dots + 2));
      if (hi < lo) throw UsageError("empty range --N " + spec);
      for (int N = lo; N <= hi; ++N) out.push_back(N);
    } else {
      out.push_back(parse_int(spec));
    }
  }
  if (out.empty()) throw UsageError("--N is empty");
  for (int N : out) {
    if (N < 1 || N > kMaxSeparation) throw UsageError("--N values must lie in 1..64");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Route> parse_routes(const std::vector<std::string>& items) {
  std::vector<Route> out;
  for (const auto& item : items) {
    try {
      out.push_back(parse_route(item));
    } catch (const Error&) {
      throw UsageError("unknown route '" + item + "' (det, exp, ff)");
    }
  }
  if (out.empty()) throw UsageError("--routes is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool valid_node_count(int M) { return M >= 8 && M <= kMaxNodes && (M & (M - 1)) == 0; }

// Aliasing of the chain sums grows with the site power, so the grid has to
// outgrow N.
int auto_nodes(int N_max) {
  int M = kDefaultNodes;
  while (M < 4 * N_max) M *= 2;
  return M;
}

int resolve_nodes(const Options& o, int N_max) {
  if (o.M == 0) return auto_nodes(N_max);
  if (!valid_node_count(o.M)) throw UsageError("--M must be a power of two in 8..1024");
  return o.M;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw UsageError("cannot open output file " + path);
  return file;
}

// Runs task(i) for i in [0, count) on a small worker pool. The first
// exception is rethrown after all workers stop.
template <class Task>
void parallel_for(int count, int threads, Task&& task) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Contexts keyed by node count, shared by all cells.
class ContextPool {
 public:
  ContextPool(ModelParams params, std::optional<double> radius)
      : params_(std::move(params)), radius_(radius) {}
  const ExpansionContext& at(int M) {
    std::lock_guard lock(mutex_);
    auto& slot = contexts_[M];
    if (!slot) slot = std::make_unique<ExpansionContext>(params_, M, radius_);
    return *slot;
  }
  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  std::optional<double> radius_;
  std::mutex mutex_;
  std::map<int, std::unique_ptr<ExpansionContext>> contexts_;
};

int cmd_table(const Options& o) {
  const ModelParams params = make_params(o);
  const auto Ns = parse_separations(o.N);
  const auto routes = parse_routes(o.routes);
  if (o.orders < 0 || o.orders > kMaxOrders) throw UsageError("--orders must lie in 0..8");
  if (o.format != "csv" && o.format != "json") throw UsageError("--format is csv or json");
  if (o.tol && !(*o.tol >= 0.0)) throw UsageError("--tol must be non-negative");
  const int M = resolve_nodes(o, Ns.back());

  ContextPool pool(params, o.radius);
  const ExpansionContext& base = pool.at(M);

  struct Cell {
    int N;
    Route route;
  };
  std::vector<Cell> cells;
  for (int N : Ns)
    for (Route r : routes) cells.push_back({N, r});

  ComparisonReport report{params, M, base.grid().r, o.orders, utc_timestamp(), {}};
  report.rows.resize(cells.size());
  std::vector<std::string> failures(cells.size());

  parallel_for(static_cast<int>(cells.size()), o.threads, [&](int i) {
    const Cell c = cells[i];
    ReportRow& row = report.rows[i];
    row.N = c.N;
    row.route = c.route;
    row.n_max = o.orders;
    if (c.route == Route::Determinant) {
      const auto e = correlation(base, c.N, c.route, o.orders);
      row.value = e.value;
      row.est_error = e.est_error;
      row.M = base.oracle().grid().M;
      return;
    }
    if (!o.tol) {
      const auto e = correlation(base, c.N, c.route, o.orders);
      row.value = e.value;
      row.est_error = e.est_error;
      row.M = M;
      row.terms = e.terms;
      return;
    }
    ComparisonEntry last;
    try {
      const auto refined = refine_until(
          [&](int m) {
            last = correlation(pool.at(m), c.N, c.route, o.orders);
            return cplx(last.value);
          },
          *o.tol, M, kMaxNodes);
      row.value = refined.value.real();
      row.est_error = std::max(last.est_error, refined.est_error);
      row.M = refined.M_used;
      row.terms = last.terms;
    } catch (const NoConvergenceError& e) {
      row.value = e.best_real;
      row.est_error = std::max(last.est_error, e.est_error);
      row.M = e.m_used;
      row.terms = last.terms;
      failures[i] = e.what();
    }
  });
  sort_rows(report);

  std::ofstream file;
  std::ostream& out = open_output(o.output, file);
  if (o.format == "csv") {
    write_csv(out, report);
  } else {
    write_json(out, report);
  }

  int failed = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (failures[i].empty()) continue;
    ++failed;
    std::cerr << "corr: N=" << cells[i].N << " route=" << to_string(cells[i].route) << ": "
              << failures[i] << "\n";
  }
  return failed ? kExitNumeric : 0;
}

int cmd_verify(const Options& o) {
  const auto& names = suite_names();
  if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  if (o.trials < 1) throw UsageError("--trials must be positive");
  if (o.format != "json" && o.format != "text" && o.format != "csv") {
    throw UsageError("--format is json or text for verify");
  }
  VerifyOptions vo;
  vo.trials = o.trials;
  vo.seed = o.seed;
  if (o.M != 0) {
    if (!valid_node_count(o.M)) throw UsageError("--M must be a power of two in 8..1024");
    vo.M = o.M;
  }
  const auto checks = run_suite(o.suite, vo);

  std::ofstream file;
  std::ostream& out = open_output(o.output, file);
  if (o.format == "text") {
    write_checks_text(out, checks);
  } else {
    write_checks_json(out, checks);
  }
  const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return all ? 0 : kExitVerify;
}

int cmd_sweep(const Options& o, bool have_M_list, bool have_order_list) {
  if (have_M_list == have_order_list) throw UsageError("give exactly one of --M-list, --order-list");
  const auto& list = have_M_list ? o.M_list : o.order_list;
  if (list.empty()) throw UsageError(have_M_list ? "--M-list is empty" : "--order-list is empty");
  for (int v : list) {
    if (have_M_list && !valid_node_count(v)) {
      throw UsageError("--M-list entries must be powers of two in 8..1024");
    }
    if (!have_M_list && (v < 0 || v > kMaxOrders)) {
      throw UsageError("--order-list entries must lie in 0..8");
    }
  }
  const ModelParams params = make_params(o);
  const auto Ns = parse_separations(o.N);
  const auto routes = parse_routes(o.routes);
  if (o.orders < 0 || o.orders > kMaxOrders) throw UsageError("--orders must lie in 0..8");
  const int M = have_M_list ? 0 : resolve_nodes(o, Ns.back());

  ContextPool pool(params, o.radius);
  struct Cell {
    int N;
    Route route;
    int M;
    int n_max;
    double value = 0.0;
  };
  std::vector<Cell> cells;
  for (int N : Ns)
    for (Route r : routes)
      for (int v : list) cells.push_back({N, r, have_M_list ? v : M, have_M_list ? o.orders : v});

  parallel_for(static_cast<int>(cells.size()), o.threads, [&](int i) {
    Cell& c = cells[i];
    if (c.route == Route::Determinant) {
      // the node count of a determinant sweep is the coefficient grid
      const int m = have_M_list ? c.M : kOracleNodes;
      c.M = m;
      c.value = ToeplitzOracle(params, m).det_D(c.N).value;
    } else {
      c.value = correlation(pool.at(c.M), c.N, c.route, c.n_max).value;
    }
  });

  const double r = pool.at(have_M_list ? list.front() : M).grid().r;
  std::ofstream file;
  std::ostream& out = open_output(o.output, file);
  out << "# corr v" << kVersion << " params=" << params_field(params) << " grid=r=" << format_double(r)
      << " sweep=" << (have_M_list ? "M" : "n_max") << "\n";
  out << "# timestamp=" << utc_timestamp() << "\n";
  out << "N,route,M,n_max,value,delta\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    out << c.N << ',' << to_string(c.route) << ',' << c.M << ',' << c.n_max << ','
        << format_double(c.value) << ',';
    const bool first = i % list.size() == 0;
    if (!first) out << format_double(std::abs(c.value - cells[i - 1].value));
    out << "\n";
  }
  return 0;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidCoupling:
    case ErrorCode::CriticalPoint:
    case ErrorCode::InvalidAlphas:
    case ErrorCode::InvalidArgument:
    case ErrorCode::RadiusOutOfRange:
    case ErrorCode::RegimeMismatch:
    case ErrorCode::MethodUnavailable:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising correlations from Toeplitz determinants and their expansions", "corr"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "file of `key = value` lines using the flag names");
  app.require_subcommand(1);

  Options o;
  auto* params = "Parameters";
  app.add_flag("--diagonal", o.diagonal, "diagonal correlation <s00 sNN>")->group(params);
  app.add_flag("--row", o.row, "row correlation <s00 s0N>")->group(params);
  app.add_option("--K1", o.K1, "horizontal coupling E1/kT")->group(params);
  app.add_option("--K2", o.K2, "vertical coupling E2/kT")->group(params);
  app.add_option("--alpha2", o.alpha2, "diagonal case given by alpha2 directly")->group(params);
  app.add_option("--direct", o.direct, "alpha1 alpha2")->expected(2)->group(params);

  app.add_option("--N", o.N, "separations: 3, 1..6 or 1,3,5")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--orders", o.orders, "expansion orders kept (n_max)")->capture_default_str();
  app.add_option("--routes", o.routes, "comma list of det, exp, ff")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--format", o.format, "csv or json (verify: json or text)")->capture_default_str();
  app.add_option("--M", o.M, "quadrature nodes (0: chosen from N)")->capture_default_str();
  app.add_option("--radius", o.radius, "contour radius (default: midpoint of the annulus)");
  app.add_option("--output,-o", o.output, "output file (default stdout)");
  app.add_option("--tol", o.tol, "refine M until successive values agree to this tolerance");
  app.add_option("--threads", o.threads, "worker threads (0: hardware)")->capture_default_str();
  app.add_option("--suite", o.suite, "verify suite or all")->capture_default_str();
  app.add_option("--trials", o.trials, "random point sets per identity suite")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "seed of the random identity suites")->capture_default_str();
  auto* M_list = app.add_option("--M-list", o.M_list, "node counts to sweep")->delimiter(',');
  auto* order_list =
      app.add_option("--order-list", o.order_list, "n_max values to sweep")->delimiter(',');

  auto* table = app.add_subcommand("table", "correlation values by every requested route");
  auto* verify = app.add_subcommand("verify", "identity and route-equivalence checks");
  auto* sweep = app.add_subcommand("sweep", "values against M or n_max");
  for (auto* sub : {table, verify, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (table->parsed()) return cmd_table(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_sweep(o, M_list->count() > 0 || !o.M_list.empty(),
                     order_list->count() > 0 || !o.order_list.empty());
  } catch (const UsageError& e) {
    std::cerr << "corr: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "corr: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "corr: " << e.what() << "\n";
    return kExitNumeric;
  }
}
