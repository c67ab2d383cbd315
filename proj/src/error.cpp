#include "textforge/error.hpp"

#include <utility>

namespace textforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnterminatedSnippet:
      return "unterminated snippet";
    case ErrorKind::UnterminatedOutput:
      return "unterminated output block";
    case ErrorKind::Parse:
      return "parse error";
    case ErrorKind::Runtime:
      return "runtime error";
    case ErrorKind::Io:
      return "I/O error";
    case ErrorKind::Usage:
      return "usage error";
  }
  return "error";
}

SourceLocation location_at(std::string_view text, std::size_t offset) {
  SourceLocation loc;
  loc.line = 1;
  loc.column = 1;
  if (offset > text.size()) offset = text.size();
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

Error::Error(ErrorKind kind, std::string message, SourceLocation where)
    : std::runtime_error(message),
      kind_(kind),
      message_(std::move(message)),
      where_(std::move(where)) {}

Error Error::with_file(const std::string& file) const {
  if (!where_.file.empty()) return *this;
  SourceLocation loc = where_;
  loc.file = file;
  return Error(kind_, message_, std::move(loc));
}

std::string Error::diagnostic() const {
  std::string out;
  if (!where_.file.empty()) out += where_.file + ":";
  if (where_.known()) {
    out += std::to_string(where_.line) + ":" + std::to_string(where_.column) + ":";
  }
  if (!out.empty()) out += " ";
  out += message_;
  return out;
}

}  // namespace textforge
