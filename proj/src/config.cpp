#include "textforge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "textforge/error.hpp"
#include "textforge/scriptlet.hpp"

namespace textforge {

namespace fs = std::filesystem;

ConfChain find_conf_chain(const fs::path& start_dir) {
  std::error_code ec;
  fs::path dir = fs::weakly_canonical(fs::absolute(start_dir, ec), ec);
  if (ec) throw Error(ErrorKind::Io, "cannot resolve directory " + start_dir.string() + ": " + ec.message());

  ConfChain chain;
  for (;;) {
    fs::path candidate = dir / kConfFileName;
    bool present = fs::is_regular_file(candidate, ec);
    if (ec && ec != std::errc::no_such_file_or_directory) {
      throw Error(ErrorKind::Io, "cannot inspect " + candidate.string() + ": " + ec.message());
    }
    if (!present) break;
    chain.paths.push_back(candidate);
    if (!dir.has_parent_path() || dir.parent_path() == dir) break;
    dir = dir.parent_path();
  }
  std::reverse(chain.paths.begin(), chain.paths.end());
  return chain;
}

void exec_conf_chain(const ConfChain& chain, EngineState& state) {
  if (state.conf_loaded) return;
  state.conf_loaded = true;

  const fs::path saved_dir = state.working_dir;
  for (const auto& path : chain.paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read configuration file", SourceLocation{path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();

    state.working_dir = path.parent_path();
    try {
      auto program = scriptlet::parse(buf.str());
      scriptlet::exec_program(program, state);
    } catch (const Error& e) {
      state.working_dir = saved_dir;
      throw e.with_file(path.string());
    }
  }
  state.working_dir = saved_dir;
}

void builtin_read_starfish_conf(EngineState& state) {
  if (state.conf_loaded) return;
  if (const char* env = std::getenv(kNoConfEnv); env && std::string_view(env) == "1") {
    state.conf_loaded = true;
    return;
  }
  fs::path dir = state.file_path.has_parent_path() ? state.file_path.parent_path() : fs::path(".");
  exec_conf_chain(find_conf_chain(dir), state);
}

}  // namespace textforge
