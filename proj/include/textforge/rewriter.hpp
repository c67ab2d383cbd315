#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textforge/core.hpp"
#include "textforge/scanner.hpp"

namespace textforge {

struct RenderedFile {
  std::string text;
  bool changed = false;  // text differs from the input
};

/// "" when neither delimiter (trailing newline ignored) appears in `output`,
/// otherwise the smallest positive n for which neither numbered delimiter does.
std::string choose_infix(std::string_view output, const OutDelims& delims);

/// Prefixes `indent` to every non-empty line.
std::string indent_output(std::string_view output, std::string_view indent);

/// Removes `line_comment` (and the whitespace before it) from every line that
/// starts with it.
std::string prepare_code(std::string_view raw_code, const std::optional<std::string>& line_comment);

/// `outputs[i]` belongs to the i-th active segment.
std::string assemble_update(std::span<const Segment> segments, std::span<const std::string> outputs,
                            const EngineState& state);
std::string assemble_replace(std::span<const Segment> segments,
                             std::span<const std::string> outputs, const EngineState& state);

struct ProcessOptions {
  std::optional<std::string> init_code;       // Scriptlet run before the first snippet
  std::optional<std::filesystem::path> out_path;  // required in replace mode
};

/// Scans and evaluates `text` snippet by snippet and assembles the result
/// for `state.mode`. Nothing touches the filesystem except builtins.
RenderedFile render(std::string_view text, EngineState& state,
                    const std::optional<std::string>& init_code = std::nullopt);

/// Full pipeline: read `path`, render, then write back (update mode) or to
/// `opts.out_path` (replace mode) unless the destination already holds the
/// same bytes. On error nothing is written.
RenderedFile process_file(const std::filesystem::path& path, EngineState& state,
                          const ProcessOptions& opts = {});

/// Atomic temp-file + rename write, skipped when the content is unchanged.
/// Returns whether a write happened.
bool write_if_changed(const std::filesystem::path& path, std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace textforge
