#include <fnmatch.h>
#include <sys/stat.h>

#include <algorithm>
#include <array>
#include <filesystem>

#include "textforge/scriptlet.hpp"
#include "textforge/styles.hpp"

namespace textforge::scriptlet {

namespace fs = std::filesystem;

void builtin_echo(const std::vector<Value>& args, EngineState& state) {
  for (const auto& a : args) state.out_buffer += a.to_string();
}

std::string builtin_htmlquote(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_date(std::time_t t) {
  static constexpr std::array<const char*, 12> months = {
      "January", "February", "March",     "April",   "May",      "June",
      "July",    "August",   "September", "October", "November", "December"};
  std::tm tm{};
  localtime_r(&t, &tm);
  return std::string(months[static_cast<std::size_t>(tm.tm_mon)]) + " " +
         std::to_string(tm.tm_mday) + ", " + std::to_string(tm.tm_year + 1900);
}

std::string builtin_file_modification_date(EngineState& state) {
  if (!state.input_mtime) {
    struct stat st {};
    if (::stat(state.file_path.c_str(), &st) != 0) {
      throw Error(ErrorKind::Io, "cannot stat " + state.file_path.string());
    }
    state.input_mtime = st.st_mtime;
  }
  return format_date(*state.input_mtime);
}

void builtin_set_style(std::string_view name, EngineState& state) {
  state.apply_style(builtin_registry().get(name));
}

void builtin_add_hook(std::string begin, std::string end, EngineState& state) {
  state.hooks.push_back(make_begin_end_hook(std::move(begin), std::move(end)));
}

void builtin_add_regex_hook(std::string pattern, std::string replacement, EngineState& state) {
  state.hooks.push_back(make_pattern_hook(std::move(pattern), std::move(replacement)));
}

void builtin_set_out_delimiters(std::string b1, std::string b2, std::string e1, std::string e2,
                                EngineState& state) {
  if ((b1 + b2).empty() || (e1 + e2).empty()) {
    throw Error(ErrorKind::Runtime, "output delimiters must not be empty");
  }
  state.out_delims = OutDelims{std::move(b1), std::move(b2), std::move(e1), std::move(e2)};
}

Value::List builtin_glob(std::string_view pattern, const EngineState& state) {
  std::string pat(pattern);
  std::string prefix;
  if (auto slash = pat.rfind('/'); slash != std::string::npos) {
    prefix = pat.substr(0, slash + 1);
    pat = pat.substr(slash + 1);
  }
  fs::path dir = state.working_dir.empty() ? fs::path(".") : state.working_dir;
  if (!prefix.empty()) dir = fs::path(prefix).is_absolute() ? fs::path(prefix) : dir / prefix;

  std::vector<std::string> names;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    std::string name = it->path().filename().string();
    if (::fnmatch(pat.c_str(), name.c_str(), FNM_PERIOD) == 0) names.push_back(prefix + name);
  }
  if (ec && ec != std::errc::no_such_file_or_directory) {
    throw Error(ErrorKind::Io, "cannot list " + dir.string() + ": " + ec.message());
  }
  std::sort(names.begin(), names.end());

  Value::List out;
  out.reserve(names.size());
  for (auto& n : names) out.emplace_back(std::move(n));
  return out;
}

std::string builtin_join(std::string_view sep, const Value& list) {
  if (!list.is_list()) return list.to_string();
  std::string out;
  bool first = true;
  for (const auto& item : list.as_list()) {
    if (!first) out += sep;
    out += item.to_string();
    first = false;
  }
  return out;
}

std::string builtin_strip_suffix(std::string_view s, std::string_view suffix) {
  if (s.ends_with(suffix)) s.remove_suffix(suffix.size());
  return std::string(s);
}

}  // namespace textforge::scriptlet
