#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isingcorr {

/// One identity check: passes when residual < tolerance.
struct CheckRecord {
  std::string name;
  std::string params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  int M = 64;
};

/// lemma1, lemma2, cauchy, perm, resum, fredholm, szego.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Unknown names throw InvalidArgument.
std::vector<CheckRecord> run_suite(const std::string& name, const VerifyOptions& options = {});

}  // namespace isingcorr
