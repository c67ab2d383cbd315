#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "textforge/core.hpp"

namespace textforge {

class StyleRegistry {
 public:
  /// Registers `style`; its extensions map to its name. Replaces a style
  /// with the same name.
  void add(Style style);

  const Style* find(std::string_view name) const;
  const Style& get(std::string_view name) const;  // throws Error(Runtime)
  std::vector<std::string> names() const;

  const std::map<std::string, Style, std::less<>>& styles() const { return styles_; }
  const std::map<std::string, std::string, std::less<>>& extensions() const { return extensions_; }

 private:
  std::map<std::string, Style, std::less<>> styles_;
  // Suffixes start with '.', anything else is an exact basename.
  std::map<std::string, std::string, std::less<>> extensions_;
};

/// default, makefile, python, perl, java and html.
const StyleRegistry& builtin_registry();

/// Exact basename first, then the longest matching suffix, else "default".
const Style& detect_style(const std::filesystem::path& path, const StyleRegistry& registry);

}  // namespace textforge
