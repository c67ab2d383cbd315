#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "textforge/core.hpp"

namespace textforge {

/// A generated output block found right after a snippet.
struct ExistingOutput {
  std::string raw;    // delimiters included
  std::string inner;  // between the delimiters
  std::string infix;  // "" or decimal digits
};

struct OuterSegment {
  std::string text;
};

struct SnippetSegment {
  std::string raw;   // begin delimiter through end delimiter
  std::string code;  // between the delimiters, comments not yet stripped
  std::size_t hook_index = 0;
  std::string indent;  // leading whitespace of the begin delimiter's line
  // Only whitespace precedes the begin delimiter on its line, and that
  // whitespace belongs to the preceding outer segment.
  bool starts_line = false;
  std::optional<ExistingOutput> existing_output;
  std::size_t offset = 0;       // of `raw` in the input
  std::size_t code_offset = 0;  // of `code` in the input
};

struct LiteralSegment {
  std::size_t needle_index = 0;
  std::string matched;
  std::size_t offset = 0;
};

struct PatternSegment {
  std::size_t hook_index = 0;
  std::string matched;
  std::vector<std::string> captures;  // captures[0] is the whole match
  std::size_t offset = 0;
};

using Segment = std::variant<OuterSegment, SnippetSegment, LiteralSegment, PatternSegment>;

bool is_active(const Segment& segment);

struct HookMatch {
  std::size_t hook_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;  // one past the match
  std::vector<std::string> captures;
};

/// Leftmost match over all hooks at or after `from`; ties go to the shorter
/// match, then to the lower hook index. A begin/end hook spans through the
/// first end delimiter after its begin delimiter.
/// Throws Error(UnterminatedSnippet) when the winning begin delimiter has no
/// end delimiter.
std::optional<HookMatch> find_next_match(std::string_view text, std::size_t from,
                                         std::span<const Hook> hooks);

/// Output block starting exactly at `at`, if any. The infix is the maximal
/// run of digits after `b1`. Throws Error(UnterminatedOutput) when the begin
/// marker is present but its end marker is not.
std::optional<ExistingOutput> detect_output_block(std::string_view text, std::size_t at,
                                                  const OutDelims& delims);

/// Incremental segmentation. Each call to next() uses the hooks and output
/// delimiters in `state` at that moment, so snippet evaluation between calls
/// affects everything scanned afterwards.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size() && !pending_; }
  std::optional<Segment> next(const EngineState& state);
  std::size_t position() const { return pos_; }

 private:
  Segment take_match(const HookMatch& m, const EngineState& state);

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t active_end_ = 0;  // end of the last active segment
  std::optional<HookMatch> pending_;
};

/// Full segmentation with the hooks in `state` (no evaluation in between).
std::vector<Segment> scan(std::string_view text, const EngineState& state);

/// Concatenation of every segment's source text, existing output included.
std::string reassemble(std::span<const Segment> segments);

}  // namespace textforge
