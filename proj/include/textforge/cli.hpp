#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textforge/core.hpp"

namespace textforge {

struct CliOptions {
  Mode mode = Mode::Update;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::string> init_code;
  std::optional<std::string> style_override;
  std::vector<std::filesystem::path> files;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// `-replace`, `-o=PATH`, `-e=CODE`, `-style=NAME` and input files (argv[0]
/// excluded). Throws Error(Usage).
CliOptions parse_args(std::span<const std::string> args);

std::string usage();

/// Processes every file in order; diagnostics go to `err` as
/// `FILE:LINE:COL: message`. Returns kExitOk only if every file succeeded.
int run(const CliOptions& opts, std::ostream& err);

/// parse_args + run, printing usage errors.
int main_entry(std::span<const std::string> args, std::ostream& err);

}  // namespace textforge
