#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace textforge {

/// A Scriptlet runtime value.
class Value {
 public:
  using List = std::vector<Value>;

  Value() : data_(std::string{}) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::int64_t i) : data_(i) {}
  Value(int i) : data_(static_cast<std::int64_t>(i)) {}
  Value(bool b) : data_(b) {}
  Value(List l) : data_(std::move(l)) {}

  bool is_string() const { return std::holds_alternative<std::string>(data_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_list() const { return std::holds_alternative<List>(data_); }

  const std::string& as_string() const { return std::get<std::string>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  const List& as_list() const { return std::get<List>(data_); }

  // Bools print as "1"/"" and lists join their elements with a single space.
  std::string to_string() const;
  bool truthy() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  std::variant<std::string, std::int64_t, bool, List> data_;
};

using Scope = std::map<std::string, Value, std::less<>>;

}  // namespace textforge
