#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "lax2d/commands.hpp"
#include "lax2d/snapshot.hpp"

using namespace lax2d;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() / ("lax2d_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config file parsing") {
  const fs::path dir = temp_dir();
  const fs::path file = dir / "run.cfg";

  SUBCASE("keys, comments and blank lines") {
    std::ofstream(file) << "# run setup\n"
                           "n = 64\n"
                           "dt = 5e-4   # fine step\n"
                           "\n"
                           "ic = shear\n"
                           "sample_times = 0, 0.25, 0.5\n"
                           "tol_compatibility = 1e-10\n";
    const RunConfig cfg = RunConfig::from_file(file);
    CHECK(cfg.n == 64);
    CHECK(cfg.dt == 5e-4);
    CHECK(cfg.ic == "shear");
    REQUIRE(cfg.sample_times.size() == 3);
    CHECK(cfg.sample_times[1] == 0.25);
    CHECK(cfg.tolerance_or("tol_compatibility", 0.0) == 1e-10);
  }

  SUBCASE("unknown keys are rejected") {
    std::ofstream(file) << "viscosity = 0.01\n";
    CHECK_THROWS_WITH_AS(RunConfig::from_file(file), doctest::Contains("unknown config key"),
                         ConfigError);
  }

  SUBCASE("malformed lines carry the line number") {
    std::ofstream(file) << "n = 64\nnot a pair\n";
    CHECK_THROWS_WITH_AS(RunConfig::from_file(file), doctest::Contains(":2"), ConfigError);
  }

  SUBCASE("validation catches out-of-range values") {
    RunConfig cfg;
    cfg.n = 63;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig();
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig();
    cfg.resonance_policy = "ignore";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = RunConfig();
    CHECK_THROWS_AS(cfg.apply("dt", "fast"), ConfigError);
  }

  SUBCASE("map round trip preserves every key") {
    RunConfig cfg;
    cfg.apply("n", "96");
    cfg.apply("dt", "0.00025");
    cfg.apply("beta", "1.4142135623730951");
    cfg.apply("sample_times", "0,0.125,0.5");
    cfg.apply("tol_bracket", "1e-12");
    cfg.apply("suite", "bracket");
    const RunConfig back = RunConfig::from_map(cfg.to_map());
    CHECK(back.to_map() == cfg.to_map());
    CHECK(back.dt == cfg.dt);
    CHECK(back.beta == cfg.beta);
  }
}

TEST_CASE("snapshot round trip is bit-exact") {
  const fs::path dir = temp_dir();
  const Grid g = Grid::make(16);
  RealField w(g);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& v : w.values) v = u(rng);

  const fs::path file = dir / "state.laxf";
  write_snapshot(file, Snapshot(0.625, w));
  const Snapshot back = read_snapshot(file);
  CHECK(back.time == 0.625);
  CHECK(back.vorticity.grid.n == 16);
  CHECK(std::memcmp(back.vorticity.values.data(), w.values.data(),
                    w.values.size() * sizeof(double)) == 0);
  CHECK_FALSE(fs::exists(file.string() + ".tmp"));

  SUBCASE("file layout: magic, version, n, time") {
    std::ifstream in(file, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::string(magic, 4) == "LAXF");
    std::uint32_t version = 0, n = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    double time = 0;
    in.read(reinterpret_cast<char*>(&time), 8);
    CHECK(version == 1);
    CHECK(n == 16);
    CHECK(time == 0.625);
    CHECK(fs::file_size(file) == 20 + 16 * 16 * 8);
  }

  SUBCASE("corrupt magic is rejected") {
    std::ofstream(dir / "bad.laxf", std::ios::binary) << "NOPE";
    CHECK_THROWS_WITH_AS(read_snapshot(dir / "bad.laxf"), doctest::Contains("LAXF"), Error);
  }
}

TEST_CASE("report serialization") {
  RunConfig cfg;
  cfg.suite = "bracket";
  std::vector<ResidualReport> checks{
      ResidualReport::make("jacobi", 1e-14, 2.0, 1e-11, {{"trial", "0"}})};
  const std::string text = report_to_json("bracket", cfg, checks);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["name"] == "bracket");
  CHECK(j["config"]["n"] == "128");
  CHECK(j["config"]["suite"] == "bracket");
  REQUIRE(j["checks"].size() == 1);
  const auto& c = j["checks"][0];
  CHECK(c["name"] == "jacobi");
  CHECK(c["residual"] == 1e-14);
  CHECK(c["scale"] == 2.0);
  CHECK(c["relative"] == doctest::Approx(5e-15));
  CHECK(c["tolerance"] == 1e-11);
  CHECK(c["passed"] == true);
  CHECK(c["context"]["trial"] == "0");

  SUBCASE("the embedded config replays to the same configuration") {
    std::map<std::string, std::string> embedded;
    for (const auto& [key, value] : j["config"].items()) embedded[key] = value.get<std::string>();
    const RunConfig replay = RunConfig::from_map(embedded);
    CHECK(replay.to_map() == cfg.to_map());
  }
}

TEST_CASE("verify suite selection") {
  RunConfig cfg;
  cfg.suite = "spectral-purity";
  CHECK_THROWS_WITH_AS(run_verify_suite(cfg), doctest::Contains("unknown suite"), ConfigError);
}
