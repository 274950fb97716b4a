#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isingcorr/error.hpp"
#include "isingcorr/expansions.hpp"
#include "isingcorr/report.hpp"
#include "isingcorr/verify.hpp"

namespace py = pybind11;
using namespace isingcorr;

namespace {

CorrelationKind parse_kind(const std::string& kind) {
  if (kind == "diagonal") return CorrelationKind::Diagonal;
  if (kind == "row") return CorrelationKind::Row;
  throw Error(ErrorCode::InvalidArgument, "kind is 'diagonal' or 'row'");
}

py::dict term_dict(const ExpansionTerm& t) {
  py::dict d;
  d["order"] = t.order;
  d["N"] = t.N;
  d["value"] = t.value;
  d["est_error"] = t.est_error;
  d["method"] = to_string(t.method);
  d["imag_residue"] = t.imag_residue;
  return d;
}

py::dict entry_dict(const ComparisonEntry& e) {
  py::dict d;
  d["N"] = e.N;
  d["route"] = to_string(e.route);
  d["value"] = e.value;
  d["est_error"] = e.est_error;
  py::list terms;
  for (const auto& t : e.terms) terms.append(term_dict(t));
  d["terms"] = terms;
  return d;
}

Method parse_method(const std::string& name) {
  if (name == "eigen") return Method::EigenSymmetric;
  if (name == "combination") return Method::Combination;
  if (name == "direct") return Method::Direct;
  throw Error(ErrorCode::InvalidArgument, "method is 'eigen', 'combination' or 'direct'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ising correlations: Toeplitz determinant oracle and series expansions";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def_static("direct", &ModelParams::direct, py::arg("alpha1"), py::arg("alpha2"))
      .def_static("diagonal", &ModelParams::diagonal, py::arg("alpha2"))
      .def_static(
          "from_couplings",
          [](const std::string& kind, double K1, double K2) {
            return ModelParams::from_couplings(parse_kind(kind), K1, K2);
          },
          py::arg("kind"), py::arg("K1"), py::arg("K2"))
      .def_property_readonly("alpha1", &ModelParams::alpha1)
      .def_property_readonly("alpha2", &ModelParams::alpha2)
      .def_property_readonly("K1", &ModelParams::K1)
      .def_property_readonly("K2", &ModelParams::K2)
      .def_property_readonly("t", &ModelParams::t)
      .def_property_readonly("kind", [](const ModelParams& p) { return to_string(p.kind()); })
      .def_property_readonly("regime", [](const ModelParams& p) { return to_string(p.regime()); })
      .def("__eq__", [](const ModelParams& a, const ModelParams& b) { return a == b; })
      .def("__repr__", [](const ModelParams& p) { return "ModelParams(" + p.describe() + ")"; });

  m.def("s_infinity", &s_infinity, py::arg("params"));
  m.def("s_hat_infinity", &s_hat_infinity, py::arg("params"));
  m.def(
      "det_DN", [](const ModelParams& p, int N) { return det_DN(p, N).value; }, py::arg("params"),
      py::arg("N"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "det_DhatN", [](const ModelParams& p, int N) { return det_DhatN(p, N).value; },
      py::arg("params"), py::arg("N"), py::call_guard<py::gil_scoped_release>());

  py::class_<ExpansionContext>(m, "Context")
      .def(py::init<ModelParams, int, std::optional<double>>(), py::arg("params"),
           py::arg("M") = kDefaultNodes, py::arg("radius") = std::nullopt)
      .def_property_readonly("M", [](const ExpansionContext& c) { return c.grid().M; })
      .def_property_readonly("radius", [](const ExpansionContext& c) { return c.grid().r; })
      .def_property_readonly("params", &ExpansionContext::params)
      .def(
          "F_2n",
          [](const ExpansionContext& c, int N, int n, bool hat) {
            return term_dict(F_2n(c, N, n, hat));
          },
          py::arg("N"), py::arg("n"), py::arg("hat") = false)
      .def(
          "Ftilde_2n",
          [](const ExpansionContext& c, int N, int n) { return term_dict(Ftilde_2n(c, N, n)); },
          py::arg("N"), py::arg("n"))
      .def(
          "phi_2n",
          [](const ExpansionContext& c, int N, int n) { return term_dict(phi_2n(c, N, n)); },
          py::arg("N"), py::arg("n"))
      .def(
          "G_2n1", [](const ExpansionContext& c, int N, int n) { return term_dict(G_2n1(c, N, n)); },
          py::arg("N"), py::arg("n"))
      .def(
          "f_2n",
          [](const ExpansionContext& c, int N, int n, bool hat, const std::string& method) {
            return term_dict(f_2n(c, N, n, hat, parse_method(method)));
          },
          py::arg("N"), py::arg("n"), py::arg("hat") = false, py::arg("method") = "eigen")
      .def(
          "f_2n1",
          [](const ExpansionContext& c, int N, int n, const std::string& method) {
            return term_dict(f_2n1(c, N, n, parse_method(method)));
          },
          py::arg("N"), py::arg("n"), py::arg("method") = "combination")
      .def(
          "correlation",
          [](const ExpansionContext& c, int N, const std::string& route, int n_max) {
            ComparisonEntry e;
            {
              py::gil_scoped_release release;
              e = correlation(c, N, parse_route(route), n_max);
            }
            return entry_dict(e);
          },
          py::arg("N"), py::arg("route") = "det", py::arg("n_max") = 3);

  m.def(
      "correlation",
      [](const ModelParams& p, int N, const std::string& route, int n_max, int M) {
        ComparisonEntry e;
        {
          py::gil_scoped_release release;
          const ExpansionContext ctx(p, M);
          e = correlation(ctx, N, parse_route(route), n_max);
        }
        return entry_dict(e);
      },
      py::arg("params"), py::arg("N"), py::arg("route") = "det", py::arg("n_max") = 3,
      py::arg("M") = kDefaultNodes);

  m.def(
      "table",
      [](const ModelParams& p, const std::vector<int>& Ns, const std::vector<std::string>& routes,
         int n_max, int M) {
        std::vector<ComparisonEntry> entries;
        {
          py::gil_scoped_release release;
          const ExpansionContext ctx(p, M);
          for (int N : Ns)
            for (const auto& r : routes) entries.push_back(correlation(ctx, N, parse_route(r), n_max));
        }
        py::list out;
        for (const auto& e : entries) out.append(entry_dict(e));
        return out;
      },
      py::arg("params"), py::arg("Ns"), py::arg("routes") = std::vector<std::string>{"det", "exp", "ff"},
      py::arg("n_max") = 3, py::arg("M") = kDefaultNodes);

  // Python-side shorthands with a fresh context per call.
  auto with_ctx = [](auto f) {
    return [f](const ModelParams& p, int N, int n, int M) {
      const ExpansionContext ctx(p, M);
      return term_dict(f(ctx, N, n));
    };
  };
  m.def("F_2n", with_ctx([](auto& c, int N, int n) { return F_2n(c, N, n, c.params().regime() == Regime::Above); }),
        py::arg("params"), py::arg("N"), py::arg("n"), py::arg("M") = kDefaultNodes);
  m.def("phi_2n", with_ctx([](auto& c, int N, int n) { return phi_2n(c, N, n); }),
        py::arg("params"), py::arg("N"), py::arg("n"), py::arg("M") = kDefaultNodes);
  m.def("G_2n1", with_ctx([](auto& c, int N, int n) { return G_2n1(c, N, n); }),
        py::arg("params"), py::arg("N"), py::arg("n"), py::arg("M") = kDefaultNodes);
  m.def("f_2n", with_ctx([](auto& c, int N, int n) { return f_2n(c, N, n, c.params().regime() == Regime::Above); }),
        py::arg("params"), py::arg("N"), py::arg("n"), py::arg("M") = kDefaultNodes);
  m.def("f_2n1", with_ctx([](auto& c, int N, int n) { return f_2n1(c, N, n); }),
        py::arg("params"), py::arg("N"), py::arg("n"), py::arg("M") = kDefaultNodes);

  m.def(
      "verify",
      [](const std::string& suite, int trials, std::uint64_t seed) {
        std::vector<CheckRecord> checks;
        {
          py::gil_scoped_release release;
          VerifyOptions o;
          o.trials = trials;
          o.seed = seed;
          checks = run_suite(suite, o);
        }
        py::list out;
        for (const auto& c : checks) {
          py::dict d;
          d["name"] = c.name;
          d["params"] = c.params;
          d["residual"] = c.residual;
          d["tolerance"] = c.tolerance;
          d["pass"] = c.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("trials") = 100, py::arg("seed") = 0);
}
