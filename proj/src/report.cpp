#include "isingcorr/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <ctime>
#include <ostream>

#include <json.hpp>

namespace isingcorr {

namespace {

nlohmann::json number(double x) {
  // json has no NaN/inf
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* const kEstErrorNote =
    "det = change when the coefficient grid is halved; exp/ff = size of the last included "
    "term (heuristic)";

std::string params_field(const ModelParams& p) {
  std::string s = std::string(to_string(p.kind())) + "(alpha1=" + format_double(p.alpha1()) +
                  ",alpha2=" + format_double(p.alpha2());
  if (p.K1() && p.K2()) {
    s += ",K1=" + format_double(*p.K1()) + ",K2=" + format_double(*p.K2());
  }
  return s + ")";
}


void sort_rows(ComparisonReport& report) {
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::pair(a.N, static_cast<int>(a.route)) < std::pair(b.N, static_cast<int>(b.route));
  });
}

void write_csv(std::ostream& os, const ComparisonReport& report) {
  os << "# corr v" << kVersion << " params=" << params_field(report.params)
     << " grid=M=" << report.M << ",r=" << format_double(report.radius) << "\n";
  os << "# timestamp=" << report.timestamp << "\n";
  os << "# est_error: " << kEstErrorNote << "\n";
  os << "N,route,value,est_error,M,n_max\n";
  for (const auto& row : report.rows) {
    os << row.N << ',' << to_string(row.route) << ',' << format_double(row.value) << ','
       << format_double(row.est_error) << ',' << row.M << ',' << row.n_max << "\n";
  }
}

void write_json(std::ostream& os, const ComparisonReport& report) {
  const ModelParams& p = report.params;
  nlohmann::json params = {{"kind", to_string(p.kind())},
                           {"regime", to_string(p.regime())},
                           {"alpha1", p.alpha1()},
                           {"alpha2", p.alpha2()}};
  if (p.K1() && p.K2()) {
    params["K1"] = *p.K1();
    params["K2"] = *p.K2();
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : row.terms) {
      terms.push_back({{"order", t.order},
                       {"N", t.N},
                       {"value", number(t.value)},
                       {"est_error", number(t.est_error)},
                       {"method", to_string(t.method)}});
    }
    rows.push_back({{"N", row.N},
                    {"route", to_string(row.route)},
                    {"value", number(row.value)},
                    {"est_error", number(row.est_error)},
                    {"M", row.M},
                    {"n_max", row.n_max},
                    {"terms", terms}});
  }
  const nlohmann::json doc = {
      {"header",
       {{"tool", "corr"},
        {"version", kVersion},
        {"params", params},
        {"grid", {{"M", report.M}, {"radius", report.radius}}},
        {"n_max", report.n_max},
        {"est_error_note", kEstErrorNote},
        {"timestamp", report.timestamp}}},
      {"rows", rows}};
  os << doc.dump(2) << "\n";
}

void write_checks_json(std::ostream& os, const std::vector<CheckRecord>& checks) {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    list.push_back({{"name", c.name},
                    {"params", c.params},
                    {"residual", number(c.residual)},
                    {"tolerance", number(c.tolerance)},
                    {"pass", c.pass}});
  }
  const nlohmann::json doc = {
      {"header", {{"tool", "corr"}, {"version", kVersion}, {"timestamp", utc_timestamp()}}},
      {"passed", all},
      {"checks", list}};
  os << doc.dump(2) << "\n";
}

void write_checks_text(std::ostream& os, const std::vector<CheckRecord>& checks) {
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.params
       << "] residual=" << format_double(c.residual) << " tol=" << format_double(c.tolerance)
       << "\n";
  }
}

}  // namespace isingcorr
