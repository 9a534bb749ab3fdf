#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "perarfima/cli.hpp"
#include "perarfima/parmodel.hpp"

using namespace perarfima;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("perarfima_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_spec(const TempDir& dir, const std::string& name, const std::string& kind,
                       const std::vector<double>& D, int p = 1) {
  PeriodicModelSpec spec;
  spec.S = static_cast<int>(D.size());
  spec.p = p;
  if (p == 1)
    spec.phi = {{0.7}, {0.8}, {0.6}, {0.4}};
  else
    spec.phi.assign(spec.S, {});
  spec.D = D;
  spec.sigma2.assign(spec.S, 1.0);
  spec.kind = model_kind_from_string(kind);
  const std::string path = dir.file(name);
  std::ofstream out(path);
  out << to_json(spec);
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("simulate writes a deterministic season-cycling table") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  const std::string out = dir.file("sim.csv");
  const std::vector<std::string> args{"simulate", "--spec", spec,    "--out",    out,
                                      "--T",      "1000",   "--seed", "1",        "--burnin",
                                      "200",      "--trunc", "500"};
  REQUIRE(cli::run(args) == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 1001);
  CHECK(rows[0] == std::vector<std::string>{"t", "season", "value"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] == std::to_string(i));
    CHECK(rows[i][1] == std::to_string((i - 1) % 4 + 1));
  }
  const std::string first = slurp(out);
  REQUIRE(cli::run(args) == 0);
  CHECK(slurp(out) == first);
}

TEST_CASE("simulate rejects a nonstationary order with exit code 2") {
  TempDir dir;
  const std::string spec = write_spec(dir, "bad.json", "B", {0.1, 0.2, 0.3, 0.6});
  CHECK(cli::run({"simulate", "--spec", spec, "--out", dir.file("x.csv")}) == 2);
}

TEST_CASE("usage errors exit with code 2") {
  TempDir dir;
  CHECK(cli::run({"simulate"}) == 2);                                       // missing required options
  CHECK(cli::run({"unknown-subcommand"}) == 2);                             // no such command
  CHECK(cli::run({"simulate", "--spec", dir.file("missing.json"), "--out", dir.file("y.csv")}) == 2);
  const std::string spec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  CHECK(cli::run({"figures", "--spec", spec, "--out", dir.file("f.csv")}) == 2);  // no target
  CHECK(cli::run({"figures", "--spec", spec, "--out", dir.file("f.csv"), "--target", "fig9"}) == 2);
}

TEST_CASE("matrices reproduces the reference grids") {
  TempDir dir;
  const std::string bspec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  const std::string out = dir.file("m.csv");
  REQUIRE(cli::run({"matrices", "--spec", bspec, "--out", out, "--format", "csv"}) == 0);
  std::map<std::string, double> grid;
  for (const auto& row : read_csv(out)) {
    if (row[0] == "grid") continue;
    grid[row[0] + "," + row[1] + "," + row[2]] = std::stod(row[3]);
  }
  CHECK(std::abs(grid.at("fivar,2,2") - 2.6744) < 1e-3);
  CHECK(std::abs(grid.at("fivar,1,1") - 2.131) < 1e-3);
  CHECK(std::abs(grid.at("varfi,3,3") - 0.15068) < 1e-3);
  CHECK(std::abs(grid.at("varfi,1,4") - 0.93428) < 1e-3);

  // target selection keeps one grid
  REQUIRE(cli::run({"matrices", "--spec", bspec, "--out", out, "--format", "csv", "--target", "m42"}) == 0);
  for (const auto& row : read_csv(out))
    if (row[0] != "grid") CHECK(row[0] == "varfi");
}

TEST_CASE("numerical failures exit with code 3") {
  // a unit root makes the long-run matrix singular; matrices hits it head-on
  TempDir dir;
  PeriodicModelSpec spec;
  spec.S = 1;
  spec.p = 1;
  spec.phi = {{1.0}};
  spec.D = {0.0};
  spec.sigma2 = {1.0};
  spec.kind = ModelKind::ModelB_Fivar;
  const std::string path = dir.file("unit.json");
  std::ofstream(path) << to_json(spec);
  CHECK(cli::run({"matrices", "--spec", path, "--out", dir.file("m.csv"), "--format", "csv"}) == 3);
}

TEST_CASE("matrices of an order-zero model degenerate to the innovation variances") {
  TempDir dir;
  const std::string spec = write_spec(dir, "a.json", "A", {0.1, 0.2, 0.3, 0.4}, 0);
  const std::string out = dir.file("m0.json");
  REQUIRE(cli::run({"matrices", "--spec", spec, "--out", out, "--format", "json"}) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m) CHECK(std::abs(j["fivar"][l][m].get<double>() - (l == m ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("theory emits exact plus asymptotic rows") {
  TempDir dir;
  const std::string spec = write_spec(dir, "c.json", "C", {0.1, 0.2, 0.3, 0.4});
  const std::string out = dir.file("t.csv");
  REQUIRE(cli::run({"theory", "--spec", spec, "--out", out, "--jmax", "20", "--trunc", "2000"}) == 0);
  const auto rows = read_csv(out);
  CHECK(rows[0] == std::vector<std::string>{"s", "j", "h", "nu", "delta", "gamma", "method"});
  std::size_t exact_rows = 0, asym_rows = 0;
  for (const auto& row : rows) {
    if (row.back() == "exact") ++exact_rows;
    if (row.back() == "asymptotic-varfi") ++asym_rows;
  }
  CHECK(exact_rows == 4 * 21);
  CHECK(asym_rows == 4 * 21);
}

TEST_CASE("acvf writes the replication mean deterministically") {
  TempDir dir;
  const std::string spec = write_spec(dir, "a.json", "A", {0.1, 0.2, 0.4, 0.4}, 0);
  const std::string out = dir.file("e.csv");
  const std::vector<std::string> args{"acvf", "--spec", spec,   "--out",  out,      "--T",     "600",
                                      "--jmax", "8",    "--reps", "3",    "--burnin", "100",   "--trunc", "200"};
  REQUIRE(cli::run(args) == 0);
  const std::string first = slurp(out);
  REQUIRE(cli::run(args) == 0);
  CHECK(slurp(out) == first);
  CHECK(read_csv(out).size() == 1 + 4 * 9);
}

TEST_CASE("companion reports the stacked form") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  const std::string out = dir.file("c.json");
  REQUIRE(cli::run({"companion", "--spec", spec, "--out", out}) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["S"] == 4);
  CHECK(j["P"] == 1);
  CHECK(j["stationary"] == true);
  CHECK(std::abs(j["root_moduli"][0].get<double>() - 0.1344) < 1e-10);
  CHECK(std::abs(j["phi0"][1][0].get<double>() + 0.8) < 1e-15);
  CHECK(std::abs(j["phi"][0][0][3].get<double>() - 0.7) < 1e-15);
}

TEST_CASE("figures: diagonal-model target emits the four seasons over 25 lags") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.3, 0.3, 0.3, 0.3});
  const std::string out = dir.file("fig1.csv");
  REQUIRE(cli::run({"figures", "--spec", spec, "--out", out, "--target", "fig1", "--T", "800", "--burnin", "200",
                    "--trunc", "400"}) == 0);
  const auto rows = read_csv(out);
  CHECK(rows[0] == std::vector<std::string>{"model", "method", "s", "j", "gamma"});
  std::size_t emp = 0;
  for (const auto& row : rows) {
    if (row[0] == "A" && row[1] == "empirical") {
      ++emp;
      const long j = std::stol(row[3]);
      CHECK(j >= 1);
      CHECK(j <= 25);
    }
  }
  CHECK(emp == 4 * 25);
}

TEST_CASE("figures: equal orders make the two models statistically indistinguishable") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.4, 0.4, 0.4, 0.4});
  const std::string out = dir.file("fig8.csv");
  REQUIRE(cli::run({"figures", "--spec", spec, "--out", out, "--target", "fig8", "--T", "600", "--burnin", "300",
                    "--trunc", "300"}) == 0);
  std::map<std::string, double> b, c;
  for (const auto& row : read_csv(out)) {
    if (row[0] == "model" || row[1] != "empirical") continue;
    (row[0] == "B" ? b : c)[row[2] + "," + row[3]] = std::stod(row[4]);
  }
  REQUIRE(b.size() == c.size());
  REQUIRE(!b.empty());
  for (const auto& [key, value] : b) CHECK(std::abs(value - c.at(key)) < 1e-8);
}

TEST_CASE("every figure target produces a well-formed bundle") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  for (const std::string target : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "figB", "figC"}) {
    const std::string out = dir.file(target + ".csv");
    REQUIRE(cli::run({"figures", "--spec", spec, "--out", out, "--target", target, "--T", "400", "--burnin", "100",
                      "--trunc", "200"}) == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() > 1);
    const long jmax = target[0] == 'f' && target.size() == 4 && target[3] >= '1' && target[3] <= '4' ? 25 : 100;
    const bool two_models = target >= "fig5" && target <= "fig8";
    CHECK(static_cast<long>(rows.size()) == 1 + (two_models ? 4 : 2) * 4 * jmax);
    for (std::size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i].size() == 5);
  }
}

TEST_CASE("theory emits parseable JSON grids") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  const std::string out = dir.file("t.json");
  REQUIRE(cli::run({"theory", "--spec", spec, "--out", out, "--jmax", "8", "--trunc", "1000", "--format", "json"}) ==
          0);
  const auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["method"] == "exact");
  CHECK(j[1]["method"] == "asymptotic-fivar");
  CHECK(j[0]["gamma"].size() == 4);
  CHECK(j[0]["gamma"][0].size() == 9);
  CHECK(j[0]["gamma"][0][0].get<double>() > 0.0);
}

TEST_CASE("appendix-ma table export") {
  TempDir dir;
  const std::string spec = write_spec(dir, "a.json", "A", {0.1, 0.3}, 0);
  const std::string out = dir.file("ma.csv");
  REQUIRE(cli::run({"appendix-ma", "--spec", spec, "--out", out, "--jmax", "10"}) == 0);
  const auto rows = read_csv(out);
  CHECK(rows[0] == std::vector<std::string>{"t", "j", "psi"});
  CHECK(rows.size() == 1 + 2 * 11);
  // psi(t, 1) equals the season's order
  for (const auto& row : rows) {
    if (row[0] == "t" || row[1] != "1") continue;
    const double want = row[0] == "1" ? 0.1 : 0.3;
    CHECK(std::abs(std::stod(row[2]) - want) < 1e-12);
  }
}

TEST_CASE("json output formats parse") {
  TempDir dir;
  const std::string spec = write_spec(dir, "b.json", "B", {0.1, 0.2, 0.3, 0.4});
  const std::string out = dir.file("sim.json");
  REQUIRE(cli::run({"simulate", "--spec", spec, "--out", out, "--T", "50", "--burnin", "50", "--trunc", "100",
                    "--format", "json"}) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["values"].size() == 50);
  CHECK(j["S"] == 4);
}
