#pragma once

#include <ctime>
#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "textforge/value.hpp"

namespace textforge {

/// Snippet delimited by a begin/end string pair.
struct BeginEndHook {
  std::string begin;
  std::string end;
};

/// A literal needle. In replace mode it is substituted by the value of the
/// Scriptlet expression `replacement`.
struct LiteralHook {
  std::string needle;
  std::string replacement;
};

/// A regular expression (ECMAScript dialect) whose match is substituted by
/// `replacement` with `$0`..`$9` expanded, in replace mode.
struct PatternHook {
  std::string source;
  std::string replacement;
  std::shared_ptr<const std::regex> regex;
};

using Hook = std::variant<BeginEndHook, LiteralHook, PatternHook>;

// Checked constructors; throw Error(Runtime) on an invalid hook.
Hook make_begin_end_hook(std::string begin, std::string end);
Hook make_literal_hook(std::string needle, std::string replacement);
Hook make_pattern_hook(std::string source, std::string replacement);

/// Output delimiters as four strings. The full begin marker for an infix
/// `n` is `b1 + n + b2`, the end marker `e1 + n + e2`.
struct OutDelims {
  std::string b1;
  std::string b2;
  std::string e1;
  std::string e2;

  std::string begin(std::string_view infix = {}) const;
  std::string end(std::string_view infix = {}) const;

  friend bool operator==(const OutDelims&, const OutDelims&) = default;
};

struct Style {
  std::string name;
  std::vector<std::string> extensions;
  std::vector<Hook> hooks;
  std::optional<std::string> line_comment;
  OutDelims out_delims;
  bool indent_adjust = false;
};

enum class Mode { Update, Replace };

/// Mutable state for processing one file. Snippets reach it through the
/// Scriptlet builtins; changes apply to text scanned after the snippet.
struct EngineState {
  Mode mode = Mode::Update;
  std::filesystem::path file_path;
  Style style;
  std::vector<Hook> hooks;
  OutDelims out_delims;
  std::optional<std::string> line_comment;
  bool indent_adjust = false;
  Scope scope;
  std::string out_buffer;  // `$O`
  bool conf_loaded = false;

  // Directory relative paths resolve against (glob). Config files run with
  // their own directory here.
  std::filesystem::path working_dir;
  // Input modification time captured when processing of the file starts.
  std::optional<std::time_t> input_mtime;

  /// Replace hooks, delimiters, line comment and indentation from `s`.
  void apply_style(const Style& s);
};

EngineState new_engine_state(std::filesystem::path path, Mode mode, const Style& style);

}  // namespace textforge
