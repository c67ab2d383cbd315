#include "textforge/cli.hpp"

#include <ostream>

#include "textforge/error.hpp"
#include "textforge/rewriter.hpp"
#include "textforge/styles.hpp"

namespace textforge {

namespace {

[[noreturn]] void usage_error(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }

}  // namespace

std::string usage() {
  return "usage: textforge [-replace -o=OUTPUT] [-e=CODE] [-style=NAME] FILE...\n"
         "  -replace     replace snippets by their output (requires -o)\n"
         "  -o=PATH      output file for replace mode\n"
         "  -e=CODE      Scriptlet code run before each file's first snippet\n"
         "  -style=NAME  use style NAME instead of detecting it from the file name\n";
}

CliOptions parse_args(std::span<const std::string> args) {
  CliOptions opts;
  bool only_files = false;
  for (const auto& arg : args) {
    if (only_files || arg.empty() || arg[0] != '-' || arg == "-") {
      opts.files.emplace_back(arg);
    } else if (arg == "--") {
      only_files = true;
    } else if (arg == "-replace") {
      opts.mode = Mode::Replace;
    } else if (arg.starts_with("-o=")) {
      if (arg.size() == 3) usage_error("-o needs a path");
      opts.out_path = arg.substr(3);
    } else if (arg.starts_with("-e=")) {
      opts.init_code = arg.substr(3);
    } else if (arg.starts_with("-style=")) {
      std::string name = arg.substr(7);
      if (!builtin_registry().find(name)) {
        std::string known;
        for (const auto& n : builtin_registry().names()) known += (known.empty() ? "" : ", ") + n;
        usage_error("unknown style '" + name + "' (known styles: " + known + ")");
      }
      opts.style_override = std::move(name);
    } else {
      usage_error("unknown option '" + arg + "'");
    }
  }
  if (opts.files.empty()) usage_error("no input files");
  if (opts.mode == Mode::Replace && !opts.out_path) {
    usage_error("an output file must be given with -o=PATH in replace mode");
  }
  if (opts.mode == Mode::Update && opts.out_path) usage_error("-o is only valid with -replace");
  if (opts.out_path && opts.files.size() > 1) {
    usage_error("-o cannot be combined with more than one input file");
  }
  return opts;
}

int run(const CliOptions& opts, std::ostream& err) {
  const StyleRegistry& registry = builtin_registry();
  int status = kExitOk;
  for (const auto& file : opts.files) {
    try {
      const Style& style =
          opts.style_override ? registry.get(*opts.style_override) : detect_style(file, registry);
      EngineState state = new_engine_state(file, opts.mode, style);
      process_file(file, state, ProcessOptions{opts.init_code, opts.out_path});
    } catch (const Error& e) {
      err << e.with_file(file.string()).diagnostic() << '\n';
      status = kExitFailure;
    } catch (const std::exception& e) {
      err << file.string() << ": " << e.what() << '\n';
      status = kExitFailure;
    }
  }
  return status;
}

int main_entry(std::span<const std::string> args, std::ostream& err) {
  CliOptions opts;
  try {
    opts = parse_args(args);
  } catch (const Error& e) {
    err << "textforge: " << e.message() << '\n' << usage();
    return kExitUsage;
  }
  return run(opts, err);
}

}  // namespace textforge
