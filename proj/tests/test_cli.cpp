#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "fkz/bounds.hpp"
#include "fkz/matrix_io.hpp"
#include "fkz/oracle.hpp"
#include "fkz/systems.hpp"

using namespace fkz;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "fkz_test_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and usage errors") {
  const auto v = cli({"version"});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("fkz ", 0) == 0);

  const auto none = cli({});
  CHECK(none.code != 0);
  CHECK(none.err.find("Usage") != std::string::npos);

  const auto unknown = cli({"gen", "--scenario", "S1", "--out-dir", "x", "--bogus", "1"});
  CHECK(unknown.code != 0);
  CHECK(unknown.err.find("--bogus") != std::string::npos);
}

TEST_CASE("gen, solve, bound") {
  const auto dir = scratch();
  const auto sys_dir = (dir / "D").string();
  const auto g = cli({"gen", "--scenario", "S3b", "--m", "120", "--n", "75", "--k", "50",
                      "--seed", "7", "--out-dir", sys_dir});
  REQUIRE(g.code == 0);
  for (const char* f : {"U.mat", "V.mat", "y.vec", "manifest.json"})
    CHECK(fs::exists(dir / "D" / f));
  const auto manifest = nlohmann::json::parse(slurp(dir / "D" / "manifest.json"));
  CHECK(manifest["scenario"] == "S3b");
  CHECK(manifest["m"] == 120);
  CHECK(manifest["n"] == 75);
  CHECK(manifest["k"] == 50);
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["residual_ratio"].get<double>() == doctest::Approx(0.5));

  const auto expected = gen_gaussian_factored({Scenario::s3b, 120, 75, 50, 7}).system;
  CHECK(load_matrix(dir / "D" / "U.mat") == expected.u());

  const auto out = (dir / "traj.csv").string();
  const auto s = cli({"solve", "--method", "rek-rk", "--dir", sys_dir, "--trials", "40",
                      "--budget", "50000", "--seed", "7", "--out", out});
  REQUIRE(s.code == 0);
  CHECK(fs::exists(dir / "traj.csv"));
  CHECK(fs::exists(dir / "traj_summary.csv"));
  CHECK(fs::exists(dir / "traj_manifest.jsonl"));
  const auto run = nlohmann::json::parse(slurp(dir / "traj_manifest.jsonl"));
  CHECK(run["scenario"] == "S3b");
  CHECK(run["method"] == "rek-rk");

  const auto again = (dir / "again.csv").string();
  REQUIRE(cli({"solve", "--method", "rek-rk", "--dir", sys_dir, "--trials", "40",
               "--budget", "50000", "--seed", "7", "--out", again})
              .code == 0);
  CHECK(slurp(out) == slurp(again));
  CHECK(slurp(dir / "traj_summary.csv") == slurp(dir / "again_summary.csv"));

  const auto bad = cli({"solve", "--method", "bogus", "--dir", sys_dir, "--out", out});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("rek-rk") != std::string::npos);
  CHECK(bad.err.find("rgs-rgs") != std::string::npos);

  const auto b = cli({"bound", "--dir", sys_dir, "--variant", "b", "--tmax", "50000"});
  REQUIRE(b.code == 0);
  const auto in = factored_reference(expected).bound_inputs();
  std::istringstream lines(b.out);
  std::string line;
  bool header = false;
  int rows = 0;
  std::int64_t last_t = -1;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header) {
      CHECK(line == "t,bound");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    const std::int64_t t = std::stoll(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    CHECK(v == doctest::Approx(theorem_bound(BoundVariant::b, t, in)).epsilon(1e-15));
    last_t = t;
    ++rows;
  }
  CHECK(rows == 501);
  CHECK(last_t == 50000);
  CHECK(b.out.find("# alpha_u=") != std::string::npos);
  CHECK(b.out.find("# theta_v=") != std::string::npos);

  CHECK(cli({"bound", "--dir", sys_dir, "--variant", "c", "--tmax", "10"}).code != 0);
  fs::remove_all(dir);
}

TEST_CASE("plain systems and missing files") {
  const auto dir = scratch();
  fs::create_directories(dir / "P");
  save_matrix(dir / "P" / "A.mat", DenseMatrix::from_rows({{1, 0}, {0, 2}, {1, 1}}));
  save_vector(dir / "P" / "y.vec", Vector{1, 2, 2});
  const auto ok = cli({"solve", "--method", "rek", "--dir", (dir / "P").string(),
                       "--trials", "2", "--budget", "100", "--out", (dir / "p.csv").string()});
  CHECK(ok.code == 0);
  const auto wrong = cli({"solve", "--method", "rk-rk", "--dir", (dir / "P").string(),
                          "--trials", "2", "--budget", "100", "--out",
                          (dir / "q.csv").string()});
  CHECK(wrong.code != 0);
  CHECK(wrong.err.find("factored") != std::string::npos);

  const auto missing = cli({"solve", "--method", "rk", "--dir", (dir / "nope").string(),
                            "--out", (dir / "r.csv").string()});
  CHECK(missing.code != 0);
  CHECK(missing.err.find("Usage") != std::string::npos);

  CHECK(cli({"gen", "--scenario", "S1", "--m", "2", "--n", "2", "--k", "3", "--out-dir",
             (dir / "G").string()})
            .code != 0);
  fs::remove_all(dir);
}
