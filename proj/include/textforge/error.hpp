#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace textforge {

enum class ErrorKind {
  UnterminatedSnippet,
  UnterminatedOutput,
  Parse,
  Runtime,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind);

/// 1-based line/column inside a named source. `file` may be empty while the
/// error travels up to the caller that knows which file was being processed.
struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  bool known() const { return line != 0; }
};

/// Line/column of byte `offset` in `text`.
SourceLocation location_at(std::string_view text, std::size_t offset);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourceLocation where = {});

  ErrorKind kind() const { return kind_; }
  const SourceLocation& where() const { return where_; }
  const std::string& message() const { return message_; }

  /// Attach a file name if none was recorded yet.
  Error with_file(const std::string& file) const;

  /// `FILE:LINE:COL: message`, degrading gracefully when parts are unknown.
  std::string diagnostic() const;

 private:
  ErrorKind kind_;
  std::string message_;
  SourceLocation where_;
};

}  // namespace textforge
