#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run corr(const std::string& args) {
  const std::string cmd = std::string(ISINGCORR_CORR_EXE) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines(text))
    if (!l.empty() && l[0] != '#' && l[0] != 'N') out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("corr_test_" + name);
}

}  // namespace

TEST_CASE("table below T_c") {
  const auto r = corr("table --diagonal --alpha2 0.5 --N 1..6 --orders 3 --routes det,exp,ff --format csv");
  REQUIRE(r.status == 0);
  const auto all = lines(r.out);
  REQUIRE(all.size() == 22);
  CHECK(all[2].rfind("# est_error: ", 0) == 0);
  CHECK(all[3] == "N,route,value,est_error,M,n_max");
  const auto rows = data_rows(r.out);
  CHECK(rows.size() == 18);
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    const auto det = fields(rows[i]), ex = fields(rows[i + 1]), ff = fields(rows[i + 2]);
    CHECK(det[1] == "det");
    CHECK(ex[1] == "exp");
    CHECK(ff[1] == "ff");
    CHECK(std::abs(std::stod(ex[2]) - std::stod(det[2])) < 1e-7);
    CHECK(std::abs(std::stod(ff[2]) - std::stod(det[2])) < 1e-7);
    CHECK(std::stod(ex[3]) >= 0.0);
  }
}

TEST_CASE("table above T_c") {
  const auto r = corr("table --direct 0.2 3.0 --N 1..4 --routes det,ff");
  REQUIRE(r.status == 0);
  const auto rows = data_rows(r.out);
  CHECK(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    const double det = std::stod(fields(rows[i])[2]), ff = std::stod(fields(rows[i + 1])[2]);
    CHECK(det > 0.0);
    CHECK(std::abs(ff - det) < 1e-6);
  }
}

TEST_CASE("couplings and json output") {
  const auto r = corr("table --row --K1 0.3 --K2 0.4 --N 2 --routes exp,det --format json");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["header"]["params"]["kind"] == "row");
  CHECK(doc["header"]["params"]["regime"] == "above");
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["route"] == "det");
  // G^(1), G^(3), G^(5), G^(7) and three Fhat terms
  CHECK(doc["rows"][1]["terms"].size() == 7);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(corr("table --diagonal --alpha2 1.0 --N 1..3").status == 2);
  CHECK(corr("table --diagonal --N 1..3").status == 2);
  CHECK(corr("table --direct 0.5 0.4").status == 2);
  CHECK(corr("table --direct 0.1 0.5 --diagonal").status == 2);
  CHECK(corr("table --diagonal --alpha2 0.5 --N 0..3").status == 2);
  CHECK(corr("table --diagonal --alpha2 0.5 --routes det,xyz").status == 2);
  CHECK(corr("table --diagonal --alpha2 0.5 --M 48").status == 2);
  CHECK(corr("table --diagonal --alpha2 0.5 --no-such-flag").status == 2);
  CHECK(corr("").status == 2);
}

TEST_CASE("critical point message") {
  const std::string cmd =
      std::string(ISINGCORR_CORR_EXE) + " table --diagonal --alpha2 1.0 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[512] = {};
  const std::size_t n = fread(buf, 1, sizeof buf - 1, pipe);
  pclose(pipe);
  CHECK(std::string(buf, n).find("CriticalPoint") != std::string::npos);
}

TEST_CASE("verify") {
  const auto r = corr("verify --suite cauchy --trials 100 --seed 7");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["passed"] == true);
  REQUIRE(doc["checks"].size() == 100);
  for (const auto& c : doc["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(c["residual"].get<double>() < 1e-12);
  }
  const auto l2 = corr("verify --suite lemma2");
  REQUIRE(l2.status == 0);
  for (const auto& c : nlohmann::json::parse(l2.out)["checks"])
    CHECK(c["residual"].get<double>() < 1e-9);
  CHECK(corr("verify --suite nosuch").status == 2);
}

TEST_CASE("sweep over M") {
  const auto r = corr("sweep --diagonal --alpha2 0.5 --N 3 --M-list 16,32,64,128 --routes exp");
  REQUIRE(r.status == 0);
  CHECK(lines(r.out)[2] == "N,route,M,n_max,value,delta");
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(fields(rows[0])[5].empty());
  const double d1 = std::stod(fields(rows[1])[5]), d2 = std::stod(fields(rows[2])[5]);
  CHECK(d2 < d1 / 10.0);
}

TEST_CASE("sweep over orders") {
  const auto r = corr("sweep --diagonal --alpha2 0.5 --N 3 --order-list 1,2,3 --routes ff");
  REQUIRE(r.status == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 3);
  const double d1 = std::stod(fields(rows[1])[5]), d2 = std::stod(fields(rows[2])[5]);
  CHECK(d2 < d1);
}

TEST_CASE("sweep usage") {
  CHECK(corr("sweep --diagonal --alpha2 0.5 --N 3 --M-list ''").status == 2);
  CHECK(corr("sweep --diagonal --alpha2 0.5 --N 3").status == 2);
  CHECK(corr("sweep --diagonal --alpha2 0.5 --N 3 --M-list 16,24").status == 2);
  CHECK(corr("sweep --diagonal --alpha2 0.5 --N 3 --M-list 16 --order-list 1").status == 2);
}

TEST_CASE("runs are reproducible apart from the timestamp") {
  const std::string args = "table --direct 0.2 0.5 --N 1..5 --orders 2";
  auto strip = [](const std::string& text) {
    std::string out;
    for (const auto& l : lines(text))
      if (l.rfind("# timestamp=", 0) != 0) out += l + "\n";
    return out;
  };
  const auto a = corr(args + " --threads 1"), b = corr(args + " --threads 4");
  REQUIRE(a.status == 0);
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("config file, overridden by flags") {
  const auto cfg = temp_file("config.ini");
  {
    std::ofstream f(cfg);
    f << "# run settings\ndiagonal = true\nalpha2 = 0.4\nN = 1..3\nroutes = det,ff\n";
  }
  const auto from_file = corr("table --config " + cfg.string());
  REQUIRE(from_file.status == 0);
  CHECK(data_rows(from_file.out).size() == 6);
  CHECK(from_file.out.find("alpha2=0.4") != std::string::npos);
  const auto overridden = corr("table --config " + cfg.string() + " --N 2");
  REQUIRE(overridden.status == 0);
  CHECK(data_rows(overridden.out).size() == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("output file") {
  const auto path = temp_file("out.csv");
  REQUIRE(corr("table --diagonal --alpha2 0.5 --N 1 --output " + path.string()).status == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(data_rows(ss.str()).size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("refinement to a tolerance") {
  const auto r = corr("table --diagonal --alpha2 0.5 --N 2 --routes exp --M 16 --tol 1e-12");
  REQUIRE(r.status == 0);
  const auto row = fields(data_rows(r.out).at(0));
  CHECK(std::stoi(row[4]) > 16);
  const auto bad = corr("table --diagonal --alpha2 0.5 --N 2 --routes exp --M 512 --tol 0");
  CHECK(bad.status == 3);
  CHECK(data_rows(bad.out).size() == 1);
}
