#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdattr/serialize.hpp"

namespace fdattr {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct PipelineConfig {
  std::string command;
  json params = json::object();
  std::uint64_t seed = kDefaultSeed;
  bool hilbert_constant = false;
};

struct RunResult {
  json report;
  // File name and contents, written in order by the caller.
  std::vector<std::pair<std::string, std::string>> files;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand. The report embeds the resolved configuration with
/// every default filled in. Throws InvalidInput for bad configurations and
/// NumericalFailure when a computation cannot be certified.
RunResult run(const PipelineConfig& config);

}  // namespace fdattr
