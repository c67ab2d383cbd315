#include "textforge/rewriter.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "textforge/error.hpp"
#include "textforge/scriptlet.hpp"

namespace textforge {

namespace fs = std::filesystem;

namespace {

std::string_view without_trailing_newlines(std::string_view s) {
  while (!s.empty() && s.back() == '\n') s.remove_suffix(1);
  return s;
}

bool delimiter_conflicts(std::string_view output, const std::string& full_begin,
                         const std::string& full_end) {
  std::string_view b = without_trailing_newlines(full_begin);
  std::string_view e = without_trailing_newlines(full_end);
  if (!b.empty() && output.find(b) != std::string_view::npos) return true;
  if (!e.empty() && output.find(e) != std::string_view::npos) return true;
  // The end marker must first occur right after the output, not overlapping it.
  std::string joined(output);
  joined += full_end;
  return joined.find(full_end) != output.size();
}

bool is_blank(char c) { return c == ' ' || c == '\t'; }

// prepare_code, also reporting how many bytes were removed from each line.
std::string strip_line_comments(std::string_view raw, const std::optional<std::string>& comment,
                                std::vector<std::size_t>* removed) {
  if (!comment || comment->empty()) {
    if (removed) removed->assign(1, 0);
    return std::string(raw);
  }
  std::string out;
  out.reserve(raw.size());
  std::size_t pos = 0;
  for (;;) {
    std::size_t eol = raw.find('\n', pos);
    std::string_view line =
        raw.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    std::size_t ws = 0;
    while (ws < line.size() && is_blank(line[ws])) ++ws;
    std::size_t cut = 0;
    if (line.substr(ws).starts_with(*comment)) cut = ws + comment->size();
    out += line.substr(cut);
    if (removed) removed->push_back(cut);
    if (eol == std::string_view::npos) break;
    out += '\n';
    pos = eol + 1;
  }
  return out;
}

std::string expand_template(std::string_view tmpl, const std::vector<std::string>& captures) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '$' && i + 1 < tmpl.size() && tmpl[i + 1] >= '0' && tmpl[i + 1] <= '9') {
      std::size_t g = static_cast<std::size_t>(tmpl[i + 1] - '0');
      if (g < captures.size()) out += captures[g];
      ++i;
    } else {
      out += tmpl[i];
    }
  }
  return out;
}

void emit_update(std::string& out, const SnippetSegment& s, std::string_view output,
                 const OutDelims& delims, bool indent_adjust) {
  out += s.raw;
  if (output.empty()) return;
  std::string body = indent_adjust && !s.indent.empty() ? indent_output(output, s.indent)
                                                        : std::string(output);
  std::string infix = choose_infix(body, delims);
  out += delims.begin(infix);
  out += body;
  out += delims.end(infix);
}

void emit_replace(std::string& out, const SnippetSegment& s, std::string_view output,
                  bool indent_adjust) {
  if (s.starts_line && out.size() >= s.indent.size()) out.resize(out.size() - s.indent.size());
  if (indent_adjust && !s.indent.empty()) {
    out += indent_output(output, s.indent);
  } else {
    out += output;
  }
}

template <typename EmitSnippet>
std::string assemble(std::span<const Segment> segments, std::span<const std::string> outputs,
                     EmitSnippet&& emit_snippet, bool replace) {
  std::string out;
  std::size_t k = 0;
  for (const auto& seg : segments) {
    if (const auto* outer = std::get_if<OuterSegment>(&seg)) {
      out += outer->text;
      continue;
    }
    const std::string& output = k < outputs.size() ? outputs[k] : std::string();
    ++k;
    if (const auto* snip = std::get_if<SnippetSegment>(&seg)) {
      emit_snippet(out, *snip, output);
    } else if (const auto* lit = std::get_if<LiteralSegment>(&seg)) {
      out += replace ? output : lit->matched;
    } else {
      out += replace ? output : std::get<PatternSegment>(seg).matched;
    }
  }
  return out;
}

// Moves a snippet-relative error location to file coordinates.
Error relocate(const Error& e, std::string_view text, std::size_t code_offset,
               const std::vector<std::size_t>& removed) {
  if (!e.where().file.empty() || !e.where().known()) return e;
  SourceLocation base = location_at(text, code_offset);
  SourceLocation loc;
  loc.line = base.line + e.where().line - 1;
  if (e.where().line == 1) {
    loc.column = base.column + e.where().column - 1;
  } else {
    std::size_t idx = e.where().line - 1;
    loc.column = e.where().column + (idx < removed.size() ? removed[idx] : 0);
  }
  return Error(e.kind(), e.message(), loc);
}

}  // namespace

std::string choose_infix(std::string_view output, const OutDelims& delims) {
  if (!delimiter_conflicts(output, delims.begin(), delims.end())) return "";
  for (std::size_t n = 1;; ++n) {
    std::string infix = std::to_string(n);
    if (!delimiter_conflicts(output, delims.begin(infix), delims.end(infix))) return infix;
  }
}

std::string indent_output(std::string_view output, std::string_view indent) {
  if (indent.empty()) return std::string(output);
  std::string out;
  bool at_line_start = true;
  for (char c : output) {
    if (at_line_start && c != '\n') out += indent;
    out += c;
    at_line_start = c == '\n';
  }
  return out;
}

std::string prepare_code(std::string_view raw_code, const std::optional<std::string>& line_comment) {
  return strip_line_comments(raw_code, line_comment, nullptr);
}

std::string assemble_update(std::span<const Segment> segments, std::span<const std::string> outputs,
                            const EngineState& state) {
  return assemble(
      segments, outputs,
      [&](std::string& out, const SnippetSegment& s, std::string_view output) {
        emit_update(out, s, output, state.out_delims, state.indent_adjust);
      },
      false);
}

std::string assemble_replace(std::span<const Segment> segments,
                             std::span<const std::string> outputs, const EngineState& state) {
  return assemble(
      segments, outputs,
      [&](std::string& out, const SnippetSegment& s, std::string_view output) {
        emit_replace(out, s, output, state.indent_adjust);
      },
      true);
}

RenderedFile render(std::string_view text, EngineState& state,
                    const std::optional<std::string>& init_code) {
  state.out_buffer.clear();
  if (init_code) {
    try {
      scriptlet::exec_program(scriptlet::parse(*init_code), state);
    } catch (const Error& e) {
      if (!e.where().file.empty()) throw;
      throw Error(e.kind(), "in -e code: " + e.message(), e.where());
    }
  }

  const bool replace = state.mode == Mode::Replace;
  std::string out;
  out.reserve(text.size());
  Scanner scanner(text);
  while (auto seg = scanner.next(state)) {
    if (auto* outer = std::get_if<OuterSegment>(&*seg)) {
      out += outer->text;
    } else if (auto* snip = std::get_if<SnippetSegment>(&*seg)) {
      // Settings in force when the snippet was scanned; its existing output
      // block was recognized with these delimiters.
      const OutDelims delims = state.out_delims;
      const bool indent_adjust = state.indent_adjust;
      std::vector<std::size_t> removed;
      std::string code = strip_line_comments(snip->code, state.line_comment, &removed);
      std::string output;
      try {
        output = scriptlet::eval_program(scriptlet::parse(code), state);
      } catch (const Error& e) {
        throw relocate(e, text, snip->code_offset, removed);
      }
      if (replace) {
        emit_replace(out, *snip, output, indent_adjust);
      } else {
        emit_update(out, *snip, output, delims, indent_adjust);
      }
    } else if (auto* lit = std::get_if<LiteralSegment>(&*seg)) {
      if (!replace) {
        out += lit->matched;
        continue;
      }
      const auto& hook = std::get<LiteralHook>(state.hooks.at(lit->needle_index));
      try {
        auto expr = scriptlet::parse_expression(hook.replacement);
        out += scriptlet::eval_expression(*expr, state).to_string();
      } catch (const Error& e) {
        if (!e.where().file.empty()) throw;
        throw Error(e.kind(), "in literal hook '" + hook.needle + "': " + e.message(),
                    location_at(text, lit->offset));
      }
    } else {
      const auto& pat = std::get<PatternSegment>(*seg);
      if (!replace) {
        out += pat.matched;
        continue;
      }
      const auto& hook = std::get<PatternHook>(state.hooks.at(pat.hook_index));
      out += expand_template(hook.replacement, pat.captures);
    }
  }

  RenderedFile result;
  result.changed = out != text;
  result.text = std::move(out);
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read file: " + std::string(std::strerror(errno)));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RenderedFile process_file(const fs::path& path, EngineState& state, const ProcessOptions& opts) {
  const std::string file = path.string();
  try {
    if (state.mode == Mode::Replace && !opts.out_path) {
      throw Error(ErrorKind::Usage, "an output file (-o) is required in replace mode");
    }
    struct stat st {};
    if (::stat(path.c_str(), &st) != 0) {
      throw Error(ErrorKind::Io, "cannot stat file: " + std::string(std::strerror(errno)));
    }
    state.input_mtime = st.st_mtime;

    const std::string input = read_file(path);
    RenderedFile result = render(input, state, opts.init_code);

    if (state.mode == Mode::Update) {
      if (result.changed) write_if_changed(path, result.text);
    } else {
      write_if_changed(*opts.out_path, result.text);
    }
    return result;
  } catch (const Error& e) {
    throw e.with_file(file);
  }
}

bool write_if_changed(const fs::path& path, std::string_view text) {
  struct stat st {};
  const bool exists = ::stat(path.c_str(), &st) == 0;
  if (exists) {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      if (buf.str() == text) return false;
    }
  }

  fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::string tmpl = (dir / ("." + path.filename().string() + ".tmpXXXXXX")).string();
  int fd = ::mkstemp(tmpl.data());
  if (fd < 0) {
    throw Error(ErrorKind::Io, "cannot create temporary file in " + dir.string() + ": " +
                                   std::strerror(errno),
                SourceLocation{path.string()});
  }
  mode_t mode;
  if (exists) {
    mode = st.st_mode & 07777;
  } else {
    mode_t mask = ::umask(0);
    ::umask(mask);
    mode = 0666 & ~mask;
  }
  ::fchmod(fd, mode);

  const char* data = text.data();
  std::size_t left = text.size();
  while (left > 0) {
    ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      ::unlink(tmpl.c_str());
      throw Error(ErrorKind::Io, "write failed: " + std::string(std::strerror(err)),
                  SourceLocation{path.string()});
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::close(fd) != 0 || ::rename(tmpl.c_str(), path.c_str()) != 0) {
    int err = errno;
    ::unlink(tmpl.c_str());
    throw Error(ErrorKind::Io, "cannot replace file: " + std::string(std::strerror(err)),
                SourceLocation{path.string()});
  }
  return true;
}

}  // namespace textforge
