#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sphier/cli.hpp"

using namespace sphier;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "cli_tmp_" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

int count_lines(const std::string& s, char first) {
  int k = 0;
  bool at_start = true;
  for (char c : s) {
    if (at_start && c == first) ++k;
    at_start = c == '\n';
  }
  return k;
}

}  // namespace

TEST_CASE("usage errors exit 2 and say why") {
  RunResult none = run_cli({});
  CHECK(none.code == 2);
  RunResult bad = run_cli({"bounds", "--r", "2"});  // missing --poly
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--poly") != std::string::npos);
  RunResult ext = run_cli({"kappa", "--n", "2", "--d", "2", "--out", "t.tsv"});
  CHECK(ext.code == 2);
  RunResult level = run_cli({"definetti", "banded", "--n", "2", "--d", "3", "--r", "2"});
  CHECK(level.code == 2);
}

TEST_CASE("help goes to stdout and exits 0") {
  RunResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("bounds") != std::string::npos);
  CHECK(help.err.empty());
}

TEST_CASE("missing polynomial file is a runtime error, not usage") {
  RunResult r = run_cli({"bounds", "--poly", "no_such_file.txt", "--r", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("no_such_file.txt") != std::string::npos);
}

TEST_CASE("bounds on the square of the sphere polynomial gives 1 twice") {
  std::string poly = write_temp("sq.txt", "1 4 0\n2 2 2\n1 0 4\n");
  RunResult r = run_cli({"bounds", "--poly", poly, "--r", "3", "--method", "both"});
  std::remove(poly.c_str());
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.find("# schema=1 subcommand=bounds seed=0") == 0);
  int data_rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    ++data_rows;
    std::istringstream cells(line);
    std::string rfield, method, value;
    std::getline(cells, rfield, ',');
    std::getline(cells, method, ',');
    std::getline(cells, value, ',');
    CHECK(rfield == "3");
    CHECK(std::abs(std::stod(value) - 1.0) < 1e-6);
  }
  CHECK(data_rows == 2);
}

TEST_CASE("identical invocations produce byte-identical tables") {
  std::vector<std::string> args = {"definetti", "banded", "--n",     "2", "--d", "2",
                                   "--r",       "4",      "--trials", "2", "--seed", "7"};
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("wall") == std::string::npos);  // no timings in tables
}

TEST_CASE("choi-lam emits one passing row per level") {
  RunResult r = run_cli({"choi-lam", "--rmax", "4"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    ++rows;
    CHECK(line.substr(line.size() - 2) == ",1");
  }
  CHECK(rows == 3);
  CHECK(r.out.find("# sp2=-0.309016994374947") != std::string::npos);
}

TEST_CASE("constants table pins alpha_2 = 2/3") {
  RunResult r = run_cli({"definetti", "constants", "--d", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2,0.6666666666666666,1,0.75,0.6666666666666667,0.75,1,") !=
        std::string::npos);
}

TEST_CASE("counterexample marginals stay far from separable") {
  RunResult r = run_cli({"definetti", "counterexample", "--rmax", "4"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out, '#') == 1);
  // every data row ends pass=1
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    ++rows;
    CHECK(line.substr(line.size() - 2) == ",1");
  }
  CHECK(rows == 3);
}

TEST_CASE("kappa reports the 2x2 golden values") {
  RunResult r = run_cli({"kappa", "--n", "2", "--d", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2,2,0.6666666666666667,1.3333333333333335,2,2") != std::string::npos);
}

TEST_CASE("harmonic listing round-trips and exits 0") {
  std::string poly = write_temp("quartic.txt", "3 4 0\n1 2 2\n-2 1 3\n5 0 4\n");
  RunResult r = run_cli({"harmonic", "--poly", poly});
  std::remove(poly.c_str());
  CHECK(r.code == 0);
  CHECK(r.out.find("# component k=0") != std::string::npos);
  CHECK(r.out.find("# component k=2") != std::string::npos);
  CHECK(r.out.find("# recomposition_residual=") != std::string::npos);
}

TEST_CASE("json output carries the same rows") {
  std::string path = "cli_tmp_out.json";
  RunResult r = run_cli({"kappa", "--n", "2", "--d", "3", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("wrote " + path) != std::string::npos);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(path.c_str());
  CHECK(ss.str().find("\"subcommand\": \"kappa\"") != std::string::npos);
  CHECK(ss.str().find("\"kappa\"") != std::string::npos);
}
