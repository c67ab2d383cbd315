#include "textforge/styles.hpp"

#include "textforge/error.hpp"

namespace textforge {

void StyleRegistry::add(Style style) {
  for (const auto& ext : style.extensions) extensions_[ext] = style.name;
  std::string name = style.name;
  styles_.insert_or_assign(std::move(name), std::move(style));
}

const Style* StyleRegistry::find(std::string_view name) const {
  auto it = styles_.find(name);
  return it == styles_.end() ? nullptr : &it->second;
}

const Style& StyleRegistry::get(std::string_view name) const {
  if (const Style* s = find(name)) return *s;
  std::string known;
  for (const auto& n : names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw Error(ErrorKind::Runtime,
              "unknown style '" + std::string(name) + "' (known styles: " + known + ")");
}

std::vector<std::string> StyleRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(styles_.size());
  for (const auto& [name, _] : styles_) out.push_back(name);
  return out;
}

namespace {

Style hash_style(std::string name, std::vector<std::string> extensions, bool indent_adjust) {
  Style s;
  s.name = std::move(name);
  s.extensions = std::move(extensions);
  s.hooks = {BeginEndHook{"#<?", "!>"}, BeginEndHook{"<?", "!>"}};
  s.line_comment = "#";
  s.out_delims = {"#", "+\n", "#", "-\n"};
  s.indent_adjust = indent_adjust;
  return s;
}

StyleRegistry make_builtin_registry() {
  StyleRegistry reg;
  reg.add(hash_style("default", {}, false));
  reg.add(hash_style("makefile", {"Makefile", "makefile", ".mk"}, true));
  reg.add(hash_style("python", {".py"}, true));
  reg.add(hash_style("perl", {".pl", ".pm"}, false));

  Style java;
  java.name = "java";
  java.extensions = {".java"};
  java.hooks = {BeginEndHook{"//<?", "!>"}, BeginEndHook{"<?", "!>"}};
  java.line_comment = "//";
  java.out_delims = {"//", "+\n", "//", "-\n"};
  reg.add(std::move(java));

  Style html;
  html.name = "html";
  html.extensions = {".html", ".htm"};
  html.hooks = {BeginEndHook{"<!--<?", "!>-->"}, BeginEndHook{"<?", "!>"}};
  html.out_delims = {"<!-- +", " -->", "<!-- -", " -->"};
  reg.add(std::move(html));
  return reg;
}

}  // namespace

const StyleRegistry& builtin_registry() {
  static const StyleRegistry registry = make_builtin_registry();
  return registry;
}

const Style& detect_style(const std::filesystem::path& path, const StyleRegistry& registry) {
  const std::string base = path.filename().string();
  const auto& exts = registry.extensions();

  if (auto it = exts.find(base); it != exts.end() && !it->first.starts_with('.')) {
    return registry.get(it->second);
  }
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [suffix, name] : exts) {
    if (!suffix.starts_with('.')) continue;
    if (base.size() > suffix.size() && base.ends_with(suffix) && suffix.size() > best_len) {
      best = &name;
      best_len = suffix.size();
    }
  }
  return registry.get(best ? *best : std::string_view("default"));
}

}  // namespace textforge
