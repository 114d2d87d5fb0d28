#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fdattr/error.hpp"
#include "fdattr/pipeline.hpp"

using namespace fdattr;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json load(const std::string& name) {
  std::ifstream in(fs::path(FDATTR_CONFIG_DIR) / name);
  return json::parse(in);
}

struct CliRun {
  int exit_code = -1;
  std::string stdout_text;
  fs::path out_dir;
};

// Runs the command line tool with its output captured in a fresh directory.
CliRun cli(const std::string& name, const std::string& args) {
  CliRun r;
  r.out_dir = fs::path(FDATTR_TEST_DIR) / name;
  fs::remove_all(r.out_dir);
  fs::create_directories(r.out_dir.parent_path());
  const fs::path captured = fs::path(FDATTR_TEST_DIR) / (name + ".stdout");
  const std::string cmd = std::string("\"") + FDATTR_CLI + "\" " + args + " --out \"" + r.out_dir.string() +
                          "\" > \"" + captured.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.stdout_text = slurp(captured);
  return r;
}

std::string config_arg(const std::string& name) {
  return "--config \"" + (fs::path(FDATTR_CONFIG_DIR) / name).string() + "\"";
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(FDATTR_TEST_DIR);
  const fs::path path = fs::path(FDATTR_TEST_DIR) / name;
  std::ofstream(path) << text;
  return path;
}

RunResult run_command(const std::string& command, const json& params, std::uint64_t seed = kDefaultSeed) {
  PipelineConfig cfg;
  cfg.command = command;
  cfg.params = params;
  cfg.seed = seed;
  return run(cfg);
}

}  // namespace

TEST_CASE("every subcommand runs from its shipped config") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"auerbach", "auerbach.json"}, {"cover", "cover.json"},         {"nu-lambda", "nu_lambda.json"},
      {"bound", "bound.json"},       {"boxcount", "cantor.json"},     {"simulate", "simulate.json"},
      {"pipeline", "damped.json"}};
  for (const auto& [command, file] : cases) {
    CAPTURE(command);
    const RunResult r = run_command(command, load(file));
    CHECK(r.report.at("status") == "ok");
    CHECK(r.report.at("command") == command);
    CHECK(r.report.contains("config"));
  }
}

TEST_CASE("cover and bound examples") {
  const RunResult c = run_command("cover", load("cover.json"));
  CHECK(c.report.at("count") == 4);
  CHECK(c.report.at("bound").get<double>() == 4.0);
  CHECK(c.report.at("certificate").at("passed") == true);
  REQUIRE(!c.files.empty());
  const auto csv = std::find_if(c.files.begin(), c.files.end(), [](const auto& f) { return f.first == "cover.csv"; });
  REQUIRE(csv != c.files.end());
  CHECK(std::count(csv->second.begin(), csv->second.end(), '\n') == 5);

  const RunResult b = run_command("bound", load("bound.json"));
  CHECK(b.report.at("report").at("bound").get<double>() == doctest::Approx(4.5849625007));

  const RunResult nu = run_command("nu-lambda", load("nu_lambda.json"));
  CHECK(nu.report.at("nu_lambda").at("nu") == 2);
}

TEST_CASE("bad parameters are rejected as invalid input") {
  CHECK_THROWS_AS(run_command("bound", json::parse(R"({"n":2,"D":1,"lambda":0.6})")), InvalidInput);
  CHECK_THROWS_AS(run_command("bound", json::parse(R"({"formula":"power_iterate"})")), InvalidInput);
  CHECK_THROWS_AS(run_command("cover", json::parse(R"({"n":2,"r":1,"rho":"half"})")), InvalidInput);
  CHECK_THROWS_AS(run_command("boxcount", json::parse(R"({"generator":"koch"})")), InvalidInput);
  CHECK_THROWS_AS(run_command("frobnicate", json::object()), InvalidInput);
  CHECK_THROWS_AS(run_command("pipeline", json::parse(R"({"system":{"name":"lorenz"}})")), InvalidInput);
}

TEST_CASE("runs are deterministic") {
  for (const std::string& command : {"auerbach", "cover", "boxcount"}) {
    const json params = load(command == "boxcount" ? "cantor.json" : command + ".json");
    const RunResult a = run_command(command, params);
    const RunResult b = run_command(command, params);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.files == b.files);
  }
}

TEST_CASE("chafee infante pipeline meets its own hypotheses") {
  const RunResult r = run_command("pipeline", load("chafee_infante.json"));
  const json& sc = r.report.at("semilinear_constants");
  const double lambda = sc.at("lambda").get<double>();
  const int n0 = sc.at("n0").get<int>();
  CHECK(sc.at("tails").at(n0).get<double>() < lambda);
  CHECK(lambda < 0.25);
  CHECK(sc.at("split_in_L_lambda_half") == true);
  CHECK(std::isfinite(r.report.at("theoretical_bound").get<double>()));
  CHECK(r.report.at("consistent") == true);
}

TEST_CASE("command line: success writes report and data files") {
  const CliRun r = cli("cover", "cover " + config_arg("cover.json"));
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(r.out_dir / "report.json"));
  CHECK(fs::exists(r.out_dir / "cover.csv"));
  CHECK(slurp(r.out_dir / "report.json") == r.stdout_text);
  CHECK(json::parse(r.stdout_text).at("count") == 4);
}

TEST_CASE("command line: invalid configs exit with code 2 and an error document") {
  const fs::path bad_lambda = write_config("bad_lambda.json", R"({"n":2,"D":1,"lambda":0.6})");
  const CliRun a = cli("bad_lambda", "bound --config \"" + bad_lambda.string() + "\"");
  CHECK(a.exit_code == 2);
  const json err = json::parse(a.stdout_text);
  CHECK(err.at("status") == "error");
  CHECK(err.at("exit_code") == 2);
  CHECK(err.at("message").get<std::string>().find("degenerate") != std::string::npos);
  CHECK(fs::exists(a.out_dir / "error.json"));

  const fs::path broken = write_config("broken.json", "{ not json");
  CHECK(cli("broken", "bound --config \"" + broken.string() + "\"").exit_code == 2);
  CHECK(cli("missing", "bound --config /nonexistent/config.json").exit_code == 2);
  CHECK(cli("flag", "bound --no-such-flag").exit_code == 2);
  CHECK(cli("nosub", "").exit_code == 2);
}

TEST_CASE("command line: numerical failures exit with code 3") {
  const fs::path blowup =
      write_config("blowup.json", R"({"system":{"name":"linear","A":[[40.0]]},"x0":[1.0],"T":100,"dt":0.01})");
  const CliRun r = cli("blowup", "simulate --config \"" + blowup.string() + "\"");
  CHECK(r.exit_code == 3);
  CHECK(json::parse(r.stdout_text).at("kind") == "numerical_failure");
}

TEST_CASE("command line: reruns are byte-identical") {
  for (const std::string& command : {"pipeline", "auerbach", "nu-lambda"}) {
    const std::string file = command == "pipeline" ? "damped.json" : command == "nu-lambda" ? "nu_lambda.json" : "auerbach.json";
    const CliRun a = cli(command + "_a", command + " " + config_arg(file) + " --seed 11");
    const CliRun b = cli(command + "_b", command + " " + config_arg(file) + " --seed 11");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    for (const auto& entry : fs::directory_iterator(a.out_dir)) {
      CHECK(slurp(entry.path()) == slurp(b.out_dir / entry.path().filename()));
    }
  }
}

TEST_CASE("command line: the hilbert constant switch changes the reported bound") {
  const fs::path l2 = write_config("l2cover.json", R"({"n":2,"r":1,"rho":0.5,"norm":{"kind":"l2"}})");
  const CliRun plain = cli("l2_plain", "cover --config \"" + l2.string() + "\"");
  const CliRun hilbert = cli("l2_hilbert", "cover --config \"" + l2.string() + "\" --hilbert-constant");
  REQUIRE(plain.exit_code == 0);
  REQUIRE(hilbert.exit_code == 0);
  CHECK(json::parse(plain.stdout_text).at("theoretical_bound").get<double>() == 36.0);
  CHECK(json::parse(hilbert.stdout_text).at("theoretical_bound").get<double>() == 196.0);
}
