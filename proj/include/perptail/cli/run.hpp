#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "perptail/model/model_json.hpp"

namespace perptail {

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitError = 3;
inline constexpr int kExitInconclusive = 4;

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

struct RunResult {
  int exit_code = kExitOk;
  Status status = Status::Inconclusive;
  // "PASS <check>: detail" lines, one per check.
  std::vector<std::string> summary;
  // CSV and manifest paths written.
  std::vector<std::filesystem::path> outputs;
  std::string error_code;
  std::string error_message;
};

// Validates the config, runs one command, writes CSVs and manifest.json to
// the output directory. Never throws for config or module errors.
RunResult run(const Json& config, const RunOptions& options);

// Command line front end: --config, --output, --seed, --threads.
int run_main(int argc, char** argv);

}  // namespace perptail
