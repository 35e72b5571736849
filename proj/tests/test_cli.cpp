#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace hlb;
using namespace hlb::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hlb_test_" + name);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
  return f;
}

}  // namespace

TEST_CASE("exponent command", "[cli]") {
  auto r = run({"exponent", "--m", "2", "--p", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "rho=2\ndual_rho=2\n");
  r = run({"exponent", "--m", "2", "--p", "inf"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("rho=1.33333333333333\n", 0) == 0);
  CHECK(run({"exponent", "--m", "1", "--p", "4"}).code == kUsage);
  CHECK(run({"exponent", "--m", "2"}).code == kUsage);
  CHECK(run({"exponent", "--m", "2", "--p", "abc"}).code == kUsage);
  CHECK(run({}).code == kUsage);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bounds command", "[cli]") {
  auto r = run({"bounds", "--m", "2", "--p", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("quotient=1.154") != std::string::npos);
  CHECK(r.out.find("certified=true") != std::string::npos);

  r = run({"bounds", "--grid", "m=2..5,p=2m", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(split_csv_row(line).back() == "true");
  }
  CHECK(rows == 4);

  CHECK(run({"bounds", "--m", "2", "--p", "3"}).code == kUsage);
  CHECK(run({"bounds", "--m", "2"}).code == kUsage);
  CHECK(run({"bounds", "--m", "2", "--p", "4", "--format", "xml"}).code == kUsage);
  CHECK(run({"bounds", "--m", "2", "--p", "4", "--out", "/nonexistent/dir/x.txt"}).code == kIo);
}

TEST_CASE("bounds output files are reproducible and round-trip", "[cli]") {
  const auto a = tmp("a.json"), b = tmp("b.json"), c = tmp("c.csv");
  REQUIRE(run({"bounds", "--grid", "m=2..3,p=2m,inf", "--format", "json", "--out", a.string()}).code == 0);
  REQUIRE(run({"bounds", "--grid", "m=2..3,p=2m,inf", "--format", "json", "--out", b.string()}).code == 0);
  const auto ja = slurp(a);
  CHECK(ja == slurp(b));
  CHECK(reports_to_json(reports_from_json(ja)) == ja);

  REQUIRE(run({"bounds", "--grid", "m=2..3,p=2m,4m", "--format", "csv", "--out", c.string()}).code == 0);
  const auto csv = slurp(c);
  std::istringstream in(csv);
  std::ostringstream again;
  write_reports_csv(again, read_reports_csv(in));
  CHECK(again.str() == csv);
  for (const auto& p : {a, b, c}) std::filesystem::remove(p);
}

TEST_CASE("grid syntax", "[cli]") {
  const auto g = parse_grid("m=2..4,p=2m,m^2,inf,10");
  // m=2: 4, 10, inf (m^2 = 4 merged); m=3: 6, 9, 10, inf; m=4: 8, 10, 16, inf
  REQUIRE(g.size() == 11);
  CHECK(g[0].m == 2);
  CHECK(g[0].p == ExtReal(4.0));
  CHECK(g[2].p.is_infinite());
  CHECK(g[4].p == ExtReal(9.0));
  CHECK(parse_grid("m=3,p=10m^2")[0].p == ExtReal(90.0));
  CHECK(parse_grid("m=5..6,p=9").empty());  // p < 2m dropped
  CHECK_THROWS_AS(parse_grid("p=2m"), DomainError);
  CHECK_THROWS_AS(parse_grid("m=1..3,p=2m"), DomainError);
  CHECK_THROWS_AS(parse_grid("m=2..3,p=2q"), DomainError);
}

TEST_CASE("norm command", "[cli]") {
  auto r = run({"norm", "--form", "t2", "--p", "4", "--certify", "--gap", "1e-4"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::map<std::string, std::string> kv;
  for (std::string line; std::getline(in, line);)
    if (auto eq = line.find('='); eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  const double lo = std::stod(kv["lower"]), up = std::stod(kv["upper"]);
  CHECK(lo >= 1.73);
  CHECK(up <= 1.7341);
  CHECK(up < 1.74);
  CHECK(kv["certified"] == "true");

  r = run({"norm", "--form", "t2", "--p", "inf"});
  CHECK(r.out.rfind("norm=2 (exact)\n", 0) == 0);
  r = run({"norm", "--form", "tm:3", "--p", "inf"});
  CHECK(r.out.rfind("norm=4 (exact)\n", 0) == 0);

  r = run({"norm", "--form", "tm:3", "--p", "6", "--certify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("method_upper=recursion") != std::string::npos);

  r = run({"norm", "--form", "t2", "--p", "4", "--restarts", "4", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("lower=1.73205080756", 0) == 0);
  CHECK(r.out == run({"norm", "--form", "t2", "--p", "4", "--restarts", "4", "--seed", "7"}).out);

  CHECK(run({"norm", "--form", "t2", "--p", "3", "--certify"}).code == kUsage);
  CHECK(run({"norm", "--form", "t9", "--p", "4"}).code == kUsage);
  CHECK(run({"norm", "--form", "file:/nonexistent.form", "--p", "4"}).code == kIo);

  const auto f = tmp("t2.form");
  REQUIRE(run({"form", "dump", "--form", "t2", "--out", f.string()}).code == 0);
  r = run({"norm", "--form", "file:" + f.string(), "--p", "inf"});
  CHECK(r.out.rfind("norm=2 (exact)", 0) == 0);
  CHECK(run({"norm", "--form", "file:" + f.string(), "--p", "4", "--certify"}).code == kUsage);
  std::filesystem::remove(f);
}

TEST_CASE("plotdata command", "[cli]") {
  const auto r = run({"plotdata", "--p", "4", "--samples", "4"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,f,g,domain");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) rows.push_back(split_csv_row(line));
  REQUIRE(rows.size() == 6);  // 5 samples + split point
  CHECK(rows[0][0] == "0");
  CHECK(rows[0][1] == "1.68179283050743");
  bool saw_split = false;
  for (const auto& row : rows) {
    CHECK(std::stod(row[1]) < 1.74);
    CHECK(std::stod(row[2]) < 1.74);
    if (row[3] == "split") {
      saw_split = true;
      CHECK(row[1] == row[2]);
    }
  }
  CHECK(saw_split);
  CHECK(run({"plotdata", "--samples", "0"}).code == kUsage);
}

TEST_CASE("verify command", "[cli]") {
  auto r = run({"verify", "--max-m", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pop holds for m=2..5") != std::string::npos);
  r = run({"verify", "--max-m", "2", "--gap", "1e-2"});
  CHECK(r.code == 0);
  r = run({"verify", "--max-m", "2", "--gap", "1e-12"});
  CHECK(r.code == kCertification);
  CHECK(r.err.find("certification failure") != std::string::npos);
}

TEST_CASE("form dump command", "[cli]") {
  auto r = run({"form", "dump", "--form", "t2"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 1 1\n1 2 1\n2 1 1\n2 2 -1\n");
  r = run({"form", "dump", "--form", "tm:3"});
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 16);
  CHECK(run({"form", "dump", "--form", "tm:40"}).code == kUsage);
  CHECK(run({"form"}).code == kUsage);
}
