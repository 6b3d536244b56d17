// End-to-end checks of the command line binary: exit codes, output files,
// and byte-for-byte determinism across runs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return XXRING_CLI_PATH; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "xxring_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("exit codes") {
  TempDir dir;
  const std::string out = " --out-dir " + dir.path.string();
  CHECK(run("oracle-check --n-sites 6 --full-spin --tau-max 6 --step 0.2" + out) == 0);
  CHECK(run("oracle-check --n-sites 6 --tau-max 6 --step 0.2 --tol 1e-30" + out) == 1);
  CHECK(run("--definitely-not-a-flag") == 2);
  CHECK(run("coherence --n-sites 10 --tau-max 5 --sites 99" + out) == 2);
  CHECK(run("oracle-check --n-sites 13 --full-spin --tau-max 2" + out) == 3);
  CHECK(run("scaling --sizes 12000 --step 0.05" + out) == 3);
  CHECK(run("--help") == 0);
}

TEST_CASE("coherence emits deterministic CSV plus a manifest") {
  TempDir dir;
  const std::string base = "coherence --n-sites 40 --sites 0,7 --tau-max 8 --step 0.25 "
                           "--compare-bessel --out-dir " + dir.path.string();
  REQUIRE(run(base + " --prefix one") == 0);
  REQUIRE(run(base + " --prefix two") == 0);
  const std::string one = slurp(dir.path / "one_phi.csv");
  CHECK(!one.empty());
  CHECK(one == slurp(dir.path / "two_phi.csv"));
  CHECK(one.substr(0, 4) == "tau,");

  const auto manifest = nlohmann::json::parse(slurp(dir.path / "one.manifest.json"));
  CHECK(manifest["command"] == "coherence");
  CHECK(manifest["parameters"]["n_sites"] == "40");
  REQUIRE(manifest["outputs"].size() == 1);
  CHECK(manifest["outputs"][0].get<std::string>().find("one_phi.csv") != std::string::npos);
}

TEST_CASE("recurrences report and infinite control") {
  TempDir dir;
  const std::string out = " --out-dir " + dir.path.string();
  REQUIRE(run("recurrences --n-sites 100 --tau-max 450 --step 0.1 --threshold 2.5" + out) == 0);
  const auto report = nlohmann::json::parse(slurp(dir.path / "recurrences_recurrences.json"));
  REQUIRE(report["events"].size() == 4);
  CHECK(report["events"][0]["q"] == 1);
  CHECK(report["t_rec_scaled"] == 100.0);

  REQUIRE(run("recurrences --n-sites 100 --tau-max 450 --step 0.1 --threshold 2.5 --infinite "
              "--prefix control" + out) == 0);
  const auto control = nlohmann::json::parse(slurp(dir.path / "control_recurrences.json"));
  CHECK(control["events"].empty());
}

TEST_CASE("entropy summary and physical-time column") {
  TempDir dir;
  const std::string out = " --out-dir " + dir.path.string();
  REQUIRE(run("entropy --n-sites 20 --tau-max 20 --step 0.1 -g 2.0" + out) == 0);
  const auto summary = nlohmann::json::parse(slurp(dir.path / "entropy_summary.json"));
  CHECK(summary["c_max"].get<double>() == doctest::Approx(3.9703048669174511).epsilon(1e-12));
  CHECK(summary["eta"].get<double>() > 0.0);
  CHECK(summary.contains("tau_star"));

  REQUIRE(run("populations --n-sites 4 --tau-max 1 --step 0.5 --physical-time -g 2.0 "
              "--prefix phys" + out) == 0);
  const std::string csv = slurp(dir.path / "phys_populations.csv");
  CHECK(csv.substr(0, 2) == "t,");
  // tau = 1 reported as t = tau / (2g) = 0.25
  CHECK(csv.find("\n0.25,") != std::string::npos);
}

TEST_CASE("scaling emits table, fit, and trajectories") {
  TempDir dir;
  const std::string out = " --out-dir " + dir.path.string();
  REQUIRE(run("scaling --sizes 20,30,40 --step 0.1 --trajectories --points 100 --threads 2" +
              out) == 0);
  const auto fit = nlohmann::json::parse(slurp(dir.path / "scaling_fit.json"));
  CHECK(fit.contains("alpha"));
  CHECK(fit.contains("residual_rms"));
  const std::string table = slurp(dir.path / "scaling_table.csv");
  CHECK(table.substr(0, 31) == "n_sites,eta,tau_star,c_star\n20,");
  CHECK(fs::exists(dir.path / "scaling_traj_20.csv"));
  CHECK(fs::exists(dir.path / "scaling_traj_40.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir.path / "scaling.manifest.json"));
  CHECK(manifest["outputs"].size() == 5);
}
