#include "textforge/value.hpp"

namespace textforge {

std::string Value::to_string() const {
  if (is_string()) return as_string();
  if (is_int()) return std::to_string(as_int());
  if (is_bool()) return as_bool() ? "1" : "";
  std::string out;
  bool first = true;
  for (const auto& item : as_list()) {
    if (!first) out += ' ';
    out += item.to_string();
    first = false;
  }
  return out;
}

bool Value::truthy() const {
  if (is_string()) return !as_string().empty();
  if (is_int()) return as_int() != 0;
  if (is_bool()) return as_bool();
  return !as_list().empty();
}

}  // namespace textforge
