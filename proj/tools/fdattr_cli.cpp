#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "fdattr/error.hpp"
#include "fdattr/pipeline.hpp"

namespace {

using fdattr::json;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fdattr::InvalidInput("cannot write '" + path.string() + "'");
  out << contents;
}

int fail(int code, const std::string& kind, const std::string& command, const std::string& message,
         const std::string& out_dir) {
  json err;
  err["status"] = "error";
  err["kind"] = kind;
  err["command"] = command;
  err["exit_code"] = code;
  err["message"] = message;
  const std::string text = err.dump(2) + "\n";
  std::cout << text;
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!ec) {
      std::ofstream f(std::filesystem::path(out_dir) / "error.json", std::ios::binary);
      f << text;
    }
  }
  return code;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw fdattr::InvalidInput("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw fdattr::InvalidInput("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw fdattr::InvalidInput("config '" + path + "' must hold a JSON object");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering numbers, Auerbach bases and box-counting dimension bounds for attractors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = fdattr::kDefaultSeed;
  bool hilbert = false;
  const std::map<std::string, std::string> descriptions = {
      {"auerbach", "Auerbach basis of a subspace"},
      {"cover", "Cover a subspace ball by smaller balls"},
      {"nu-lambda", "nu_lambda of a contraction-plus-compact split"},
      {"bound", "Evaluate a dimension bound formula"},
      {"boxcount", "Box-counting estimate for a generated set"},
      {"simulate", "Integrate a system and export the trajectory"},
      {"pipeline", "Sample an attractor, bound its dimension and compare with box counting"}};
  for (const auto& name : fdattr::subcommands()) {
    const auto it = descriptions.find(name);
    CLI::App* sub = app.add_subcommand(name, it == descriptions.end() ? "" : it->second);
    sub->add_option("--config", config_path, "JSON parameter file");
    sub->add_option("--seed", seed, "Seed for randomized restarts");
    sub->add_option("--out", out_dir, "Directory for report.json and data files");
    sub->add_flag("--hilbert-constant", hilbert, "Use the 7^n covering constant for l2 norms");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitInvalid, "invalid_arguments", "", e.what(), "");
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    fdattr::PipelineConfig cfg;
    cfg.command = command;
    cfg.params = load_config(config_path);
    cfg.seed = seed;
    cfg.hilbert_constant = hilbert;
    const fdattr::RunResult result = fdattr::run(cfg);
    const std::string report = result.report.dump(2) + "\n";
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_file(std::filesystem::path(out_dir) / "report.json", report);
      for (const auto& [name, contents] : result.files) write_file(std::filesystem::path(out_dir) / name, contents);
    }
    std::cout << report;
    return 0;
  } catch (const fdattr::InvalidInput& e) {
    return fail(kExitInvalid, "invalid_config", command, e.what(), out_dir);
  } catch (const json::exception& e) {
    return fail(kExitInvalid, "invalid_config", command, e.what(), out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitInvalid, "invalid_config", command, e.what(), out_dir);
  } catch (const fdattr::NumericalFailure& e) {
    return fail(kExitNumerical, "numerical_failure", command, e.what(), out_dir);
  } catch (const std::exception& e) {
    return fail(kExitNumerical, "numerical_failure", command, e.what(), out_dir);
  }
}
