#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const std::string kCli = RIGHTHAM_CLI;
const std::string kFixtures = RIGHTHAM_FIXTURES;

struct Run {
  int exit_code = -1;
  std::string output;
  double seconds = 0;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("rightham_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI writing its report to a scratch file; stderr is discarded.
Run run(const std::string& args) {
  static int counter = 0;
  const auto out = scratch_dir() / ("out" + std::to_string(counter++) + ".json");
  const std::string command = "'" + kCli + "' " + args + " -o '" + out.string() + "' 2>/dev/null";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(command.c_str());
  Run r;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  r.output = buffer.str();
  return r;
}

// Runs without -o so that the report goes to stdout.
Run run_stdout(const std::string& args) {
  const std::string command = "'" + kCli + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char chunk[4096];
  std::size_t n = 0;
  while ((n = std::fread(chunk, 1, sizeof chunk, pipe)) > 0) r.output.append(chunk, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return "'" + kFixtures + "/" + name + "'"; }

}  // namespace

TEST_CASE("close exit codes and timing") {
  for (const char* name : {"nsphere.problem", "cm.problem"}) {
    auto r = run("close " + fixture(name));
    CHECK(r.exit_code == 0);
    CHECK(r.seconds < 10);
    CHECK(Json::parse(r.output)["status"] == "closed");
  }
  auto quartic = run("close " + fixture("quartic.problem"));
  CHECK(quartic.exit_code == 3);
  CHECK(quartic.seconds < 10);
  CHECK(Json::parse(quartic.output)["exit_status"] == 3);
}

TEST_CASE("invariants on fixtures") {
  auto r = run("invariants " + fixture("nsphere.problem") + " --casimir --center --degree 4");
  CHECK(r.exit_code == 0);
  CHECK(r.seconds < 10);
  auto report = Json::parse(r.output);
  CHECK(report["casimir"]["nontrivial_count"] == 1);
  CHECK(report["center"]["dimension"] == 10);

  auto cm = run("invariants " + fixture("cm.problem") + " --center");
  CHECK(cm.exit_code == 0);
  CHECK(Json::parse(cm.output)["center"]["dimension"] == 1);
}

TEST_CASE("input errors exit 2") {
  const fs::path bad = scratch_dir() / "bad.problem";
  std::ofstream(bad) << R"({"dof": 1, "generators": {"H": "p1^2 + * q1"}})";
  auto r = run("close '" + bad.string() + "'");
  CHECK(r.exit_code == 2);
  auto report = Json::parse(r.output);
  CHECK(report["exit_status"] == 2);
  CHECK(report.contains("error"));

  CHECK(run("close " + fixture("nsphere.problem") + " --no-such-flag").exit_code == 2);
  CHECK(run("separate --masses 1,1 --dim 1 --hamiltonian 'p1^2/2 + p2^2/2 + q1^2'").exit_code == 2);
  CHECK(run("separate --masses 1,0 --dim 1").exit_code == 2);
}

TEST_CASE("I/O errors exit 4") {
  CHECK(run_stdout("close " + fixture("nsphere.problem") + " -o /nonexistent_dir/x.json").exit_code == 4);
  CHECK(run("close '" + kFixtures + "/missing.problem'").exit_code == 4);
}

TEST_CASE("reports are byte-stable") {
  for (const std::string args : {"close " + fixture("nsphere.problem"), "close " + fixture("cm.problem"),
                                 std::string("spectrum box --mass 1 --side 1 --nmax 3"),
                                 std::string("separate --masses 2,3,5 --dim 3")}) {
    auto a = run_stdout(args);
    auto b = run_stdout(args);
    CHECK(a.exit_code == 0);
    CHECK(!a.output.empty());
    CHECK(a.output == b.output);
  }
}

TEST_CASE("spectrum examples") {
  auto box = run("spectrum box --mass 1 --side 1 --nmax 3");
  CHECK(box.exit_code == 0);
  CHECK(Json::parse(box.output)["spectrum"]["level_count"] == 27);

  auto harmonic = run("spectrum internal --potential harmonic --omega 1 --mass 1 --count 5");
  CHECK(harmonic.exit_code == 0);
  const auto levels = Json::parse(harmonic.output)["spectrum"]["levels"];
  REQUIRE(levels.size() == 5);
  for (std::size_t n = 0; n < 5; ++n) {
    CHECK(levels[n]["energy"].get<double>() == doctest::Approx(n + 0.5).epsilon(1e-3));
  }

  auto right = run("spectrum composite --mode right --f 2 --internal 0.5,1.5");
  CHECK(right.exit_code == 0);
  const auto rl = Json::parse(right.output)["spectrum"]["levels"];
  REQUIRE(rl.size() == 2);
  CHECK(rl[0]["energy"].get<double>() == doctest::Approx(2.5));
  CHECK(rl[1]["energy"].get<double>() == doctest::Approx(3.5));
}

TEST_CASE("separate example") {
  auto r = run("separate --masses 1,1 --dim 3");
  CHECK(r.exit_code == 0);
  auto report = Json::parse(r.output);
  CHECK(report["canonical"]["passed"] == true);
  CHECK(report["separation"]["reduced_masses"][0] == "1/2");
}
