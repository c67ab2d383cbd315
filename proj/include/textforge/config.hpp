#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "textforge/core.hpp"

namespace textforge {

inline constexpr std::string_view kConfFileName = "starfish.conf";
inline constexpr const char* kNoConfEnv = "TEXTFORGE_NO_CONF";

/// Configuration files, topmost ancestor first.
struct ConfChain {
  std::vector<std::filesystem::path> paths;
};

/// Walks upward from `start_dir` while each directory holds a `starfish.conf`;
/// the first directory without one ends the walk.
ConfChain find_conf_chain(const std::filesystem::path& start_dir);

/// Runs each file of the chain, in order, against `state.scope` with the
/// file's directory as the working directory. `$O` is left as it was. Does
/// nothing once the state has loaded its configuration.
void exec_conf_chain(const ConfChain& chain, EngineState& state);

/// `read_starfish_conf`: chain from the processed file's directory. Disabled
/// when TEXTFORGE_NO_CONF=1.
void builtin_read_starfish_conf(EngineState& state);

}  // namespace textforge
