#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "scatpoly/cli.hpp"
#include "scatpoly/io.hpp"

using namespace scatpoly;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("scatpoly_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double summary_value(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("eval") {
  SUBCASE("phi^(1,1) is 1 - r^2") {
    const Result r = run({"eval", "1", "1", "--grid", "3x4"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const GridSample g = read_grid_csv(in);
    CHECK(g.values.rows() == 3);
    CHECK(g.values.cols() == 4);
    for (Eigen::Index i = 0; i < 3; ++i) {
      const double rad = g.radial_nodes[i];
      for (Eigen::Index j = 0; j < 4; ++j) CHECK(std::abs(g.values(i, j) - (1 - rad * rad)) < 1e-15);
    }
  }

  SUBCASE("phi^(2,1) at r = 1/2") {
    const Result r = run({"eval", "2", "1", "--grid", "2x4"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const GridSample g = read_grid_csv(in);
    CHECK(g.radial_nodes[1] == 0.5);
    CHECK(std::abs(g.values(1, 0) - 0.75) < 1e-15);
    // 2 zbar (1 - |z|^2) at theta = pi/2
    CHECK(std::abs(g.values(1, 1) - std::complex<double>(0, -0.75)) < 1e-15);
  }

  SUBCASE("json format") {
    const Result r = run({"eval", "1", "1", "--grid", "2x2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.size() == 4);
    CHECK(doc[2]["r"].get<double>() == 0.5);
    CHECK(doc[2]["re"].get<double>() == 0.75);
  }

  SUBCASE("bad input") {
    const Result r = run({"eval", "0", "1"});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("min{p,q} must be >= 1") != std::string::npos);
    CHECK(run({"eval", "1", "1", "--grid", "3by4"}).code == cli::kUsageError);
    CHECK(run({"eval", "1", "1", "--format", "xml"}).code == cli::kUsageError);
    CHECK(run({"eval", "1"}).code == cli::kUsageError);
    CHECK(run({}).code == cli::kUsageError);
    CHECK(run({"frobnicate"}).code == cli::kUsageError);
  }
}

TEST_CASE("help exits cleanly") {
  const Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("verify") {
  const Result r = run({"verify", "8"});
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["passed"].get<bool>());
  CHECK(report["checks"].size() == 8);
  for (const auto& c : report["checks"]) CHECK(c["passed"].get<bool>());
  CHECK(report["jacobi_sign_table"].size() == basis_indices(8).size());
  for (const auto& row : report["jacobi_sign_table"]) {
    const int mx = std::max(row["p"].get<int>(), row["q"].get<int>());
    CHECK(row["printed_sign_agrees"].get<bool>() == (mx % 2 == 1));
  }
  for (const auto& cls : report["jacobi_sign_classes"]) {
    const bool odd = cls["class"].get<std::string>() == "max(p,q) odd";
    CHECK(cls["printed_sign_contradicted"].get<int>() == (odd ? 0 : cls["indices"].get<int>()));
  }

  CHECK(run({"verify", "2"}).code == 0);
  CHECK(run({"verify", "1"}).code == cli::kUsageError);

  SUBCASE("an impossible tolerance reports failure") {
    const Result strict = run({"verify", "6", "--diag-tol", "0", "--gram-tol", "0"});
    CHECK(strict.code == cli::kVerificationFailed);
  }

  SUBCASE("report to file with PASS lines") {
    const fs::path path = scratch_dir() / "verify.json";
    const Result f = run({"verify", "4", "--out", path.string()});
    CHECK(f.code == 0);
    CHECK(f.out.find("PASS route_equivalence_exact") != std::string::npos);
    CHECK(nlohmann::json::parse(slurp(path))["max_sum"].get<int>() == 4);
  }
}

TEST_CASE("gram") {
  const Result r = run({"gram", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "p,q,1:1,1:2,2:1");
  const double diag[] = {std::numbers::pi / 2, std::numbers::pi / 6, 2 * std::numbers::pi / 3};
  for (int i = 0; i < 3; ++i) {
    std::string line;
    std::getline(in, line);
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 5);
    for (int j = 0; j < 3; ++j) {
      const double v = std::stod(cells[2 + j]);
      if (i == j) {
        CHECK(v == doctest::Approx(diag[i]).epsilon(1e-14));
      } else {
        CHECK(v == 0.0);
      }
    }
  }
  CHECK(r.err.find("size=3") != std::string::npos);

  const Result g2 = run({"gram", "2", "--format", "json"});
  REQUIRE(g2.code == 0);
  CHECK(nlohmann::json::parse(g2.out)["re"][0][0].get<double>() == doctest::Approx(std::numbers::pi / 2));

  const Result g10 = run({"gram", "10"});
  REQUIRE(g10.code == 0);
  CHECK(summary_value(g10.err, "size") == 45);
  CHECK(summary_value(g10.err, "max_off_diagonal") < 1e-11);
  CHECK(summary_value(g10.err, "max_diagonal_relative_error") < 1e-12);
}

TEST_CASE("moments") {
  const Result r = run({"moments", "0", "0"});
  REQUIRE(r.code == 0);
  CHECK(summary_value(r.err, "slope") == doctest::Approx(std::numbers::pi).epsilon(0.01));
  CHECK(r.err.find("monotone=true") != std::string::npos);
  CHECK(r.out.rfind("eps,log_inv_eps,value\n", 0) == 0);

  const Result r10 = run({"moments", "1", "0", "--eps-ladder", "1e-2,1e-4,1e-6", "--format", "json"});
  REQUIRE(r10.code == 0);
  const auto doc = nlohmann::json::parse(r10.out);
  CHECK(doc["slope"].get<double>() > 0.0);
  CHECK(doc["monotone"].get<bool>());
  CHECK(doc["rows"].size() == 3);

  CHECK(run({"moments", "0", "0", "--eps-ladder", "1e-2,2"}).code == cli::kUsageError);
  CHECK(run({"moments", "0", "0", "--eps-ladder", "1e-2"}).code == cli::kUsageError);
  CHECK(run({"moments", "-1", "0"}).code == cli::kUsageError);
}

TEST_CASE("expand and solve") {
  const fs::path dir = scratch_dir();

  SUBCASE("a basis function expands to one coefficient") {
    const Result r = run({"expand", "builtin:phi_2_3", "--trunc", "8"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const ExpansionTable t = read_expansion_json(in);
    for (const auto& [idx, c] : t.coefficients()) {
      const std::complex<double> want = idx == PQIndex(2, 3) ? 1.0 : 0.0;
      CHECK(std::abs(c - want) < 1e-10);
    }
    CHECK(summary_value(r.err, "terms") == 28);
  }

  SUBCASE("solve divides by pq") {
    const Result r = run({"solve", "builtin:phi_2_3", "--trunc", "6"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    CHECK(std::abs(read_expansion_json(in).at({2, 3}) - 1.0 / 6.0) < 1e-11);
  }

  SUBCASE("residual shrinks as the truncation grows") {
    const Result coarse = run({"expand", "builtin:radial_bump", "--trunc", "3"});
    const Result fine = run({"expand", "builtin:radial_bump", "--trunc", "4"});
    REQUIRE(coarse.code == 0);
    REQUIRE(fine.code == 0);
    CHECK(summary_value(fine.err, "l2_residual") < summary_value(coarse.err, "l2_residual"));
    CHECK(summary_value(fine.err, "l2_residual") < 1e-12);
    CHECK(run({"expand", "builtin:unit"}).err.find("l2_residual=n/a") != std::string::npos);
  }

  SUBCASE("grid input and reconstruction output") {
    const fs::path input = dir / "input.csv";
    {
      std::ofstream os(input);
      write_grid_csv(os, sample([](double r, double) { return std::complex<double>(1 - r * r); }, {33, 16}));
    }
    const fs::path table = dir / "table.json";
    const Result r = run({"expand", input.string(), "--trunc", "4", "--out", table.string(), "--grid", "4x8"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("terms=6") != std::string::npos);
    std::ifstream tin(table);
    CHECK(std::abs(read_expansion_json(tin).at({1, 1}) - 1.0) < 1e-2);
    std::ifstream gin(table.string() + ".grid.csv");
    CHECK(read_grid_csv(gin).values.rows() == 4);

    CHECK(run({"expand", input.string(), "--grid", "4x8"}).code == cli::kUsageError);
  }

  SUBCASE("malformed grid reports the line") {
    const fs::path bad = dir / "bad.csv";
    {
      std::ofstream os(bad);
      os << "r,theta,re,im\n0,0,1,0\n0,1,oops,0\n";
    }
    const Result r = run({"expand", bad.string()});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(run({"expand", (dir / "missing.csv").string()}).code == cli::kUsageError);
    CHECK(run({"expand", "builtin:nothing"}).code == cli::kUsageError);
    CHECK(run({"expand", "builtin:unit", "--trunc", "1"}).code == cli::kUsageError);
  }

  SUBCASE("unwritable output") {
    const Result r = run({"eval", "1", "1", "--out", (dir / "no_such_dir" / "x.csv").string()});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("cannot open output file") != std::string::npos);
  }
}

TEST_CASE("output is byte-identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"eval", "4", "3", "--grid", "5x7"}, {"gram", "5"}, {"moments", "1", "1"},
        {"solve", "builtin:radial_bump", "--trunc", "6"}, {"verify", "5"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("installed binary exit codes") {
  const std::string bin = SCATPOLY_BIN;
  auto status = [&](const std::string& tail) {
    const int raw = std::system((bin + " " + tail + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("eval 2 2 --grid 3x3") == 0);
  CHECK(status("eval 0 1") == 2);
  CHECK(status("verify 4") == 0);
  CHECK(status("--help") == 0);
}
