#include "textforge/core.hpp"

#include "textforge/error.hpp"

namespace textforge {

Hook make_begin_end_hook(std::string begin, std::string end) {
  if (begin.empty() || end.empty()) {
    throw Error(ErrorKind::Runtime, "hook delimiters must be non-empty");
  }
  return BeginEndHook{std::move(begin), std::move(end)};
}

Hook make_literal_hook(std::string needle, std::string replacement) {
  if (needle.empty()) throw Error(ErrorKind::Runtime, "literal hook needle must be non-empty");
  return LiteralHook{std::move(needle), std::move(replacement)};
}

Hook make_pattern_hook(std::string source, std::string replacement) {
  if (source.empty()) throw Error(ErrorKind::Runtime, "regex hook pattern must be non-empty");
  std::shared_ptr<const std::regex> re;
  try {
    re = std::make_shared<const std::regex>(source, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error(ErrorKind::Runtime, "invalid regex hook '" + source + "': " + e.what());
  }
  return PatternHook{std::move(source), std::move(replacement), std::move(re)};
}

std::string OutDelims::begin(std::string_view infix) const {
  std::string out = b1;
  out += infix;
  out += b2;
  return out;
}

std::string OutDelims::end(std::string_view infix) const {
  std::string out = e1;
  out += infix;
  out += e2;
  return out;
}

void EngineState::apply_style(const Style& s) {
  style = s;
  hooks = s.hooks;
  out_delims = s.out_delims;
  line_comment = s.line_comment;
  indent_adjust = s.indent_adjust;
}

EngineState new_engine_state(std::filesystem::path path, Mode mode, const Style& style) {
  EngineState state;
  state.mode = mode;
  state.working_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  state.file_path = std::move(path);
  state.apply_style(style);
  return state;
}

}  // namespace textforge
