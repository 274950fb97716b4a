#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isingcorr/expansions.hpp"
#include "isingcorr/verify.hpp"

namespace isingcorr {

inline constexpr const char* kVersion = "0.1.0";

struct ReportRow {
  int N = 0;
  Route route = Route::Determinant;
  double value = 0.0;
  double est_error = 0.0;
  int M = 0;
  int n_max = 0;
  std::vector<ExpansionTerm> terms;
};

struct ComparisonReport {
  ModelParams params;
  int M = 0;
  double radius = 0.0;
  int n_max = 0;
  std::string timestamp;
  std::vector<ReportRow> rows;
};

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// Sorts rows by (N, route).
/// "diagonal(alpha1=0,alpha2=0.5)", as in the CSV header.
std::string params_field(const ModelParams& p);

void sort_rows(ComparisonReport& report);

/// "# corr v<version> params=<...> grid=<...>", "# timestamp=<...>", then
/// N,route,value,est_error,M,n_max rows at 17 significant digits.
void write_csv(std::ostream& os, const ComparisonReport& report);
void write_json(std::ostream& os, const ComparisonReport& report);

void write_checks_json(std::ostream& os, const std::vector<CheckRecord>& checks);
void write_checks_text(std::ostream& os, const std::vector<CheckRecord>& checks);

/// %.17g
std::string format_double(double x);

}  // namespace isingcorr
