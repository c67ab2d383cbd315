#include <functional>
#include <map>

#include "textforge/config.hpp"
#include "textforge/scriptlet.hpp"

namespace textforge::scriptlet {

namespace {

constexpr std::string_view kOutputVar = "O";

[[noreturn]] void runtime_error(const std::string& msg, const SourceLocation& where) {
  throw Error(ErrorKind::Runtime, msg, where);
}

struct Builtin {
  std::size_t min_args;
  std::size_t max_args;
  std::function<Value(std::vector<Value>&, EngineState&)> fn;
};

const std::map<std::string, Builtin, std::less<>>& builtins() {
  static const std::map<std::string, Builtin, std::less<>> table = {
      {"htmlquote",
       {1, 1, [](auto& a, auto&) { return Value(builtin_htmlquote(a[0].to_string())); }}},
      {"file_modification_date",
       {0, 0, [](auto&, auto& st) { return Value(builtin_file_modification_date(st)); }}},
      {"read_starfish_conf",
       {0, 0,
        [](auto&, auto& st) {
          builtin_read_starfish_conf(st);
          return Value();
        }}},
      {"set_style",
       {1, 1,
        [](auto& a, auto& st) {
          builtin_set_style(a[0].to_string(), st);
          return Value();
        }}},
      {"add_hook",
       {2, 2,
        [](auto& a, auto& st) {
          builtin_add_hook(a[0].to_string(), a[1].to_string(), st);
          return Value();
        }}},
      {"add_regex_hook",
       {2, 2,
        [](auto& a, auto& st) {
          builtin_add_regex_hook(a[0].to_string(), a[1].to_string(), st);
          return Value();
        }}},
      {"set_out_delimiters",
       {4, 4,
        [](auto& a, auto& st) {
          builtin_set_out_delimiters(a[0].to_string(), a[1].to_string(), a[2].to_string(),
                                     a[3].to_string(), st);
          return Value();
        }}},
      {"glob", {1, 1, [](auto& a, auto& st) { return Value(builtin_glob(a[0].to_string(), st)); }}},
      {"join",
       {2, 2, [](auto& a, auto&) { return Value(builtin_join(a[0].to_string(), a[1])); }}},
      {"strip_suffix",
       {2, 2,
        [](auto& a, auto&) {
          return Value(builtin_strip_suffix(a[0].to_string(), a[1].to_string()));
        }}},
  };
  return table;
}

class Interpreter {
 public:
  explicit Interpreter(EngineState& state) : state_(state) {}

  void run(const Block& block) {
    for (const auto& s : block) statement(s);
  }

  Value eval(const Expr& e) {
    return std::visit([&](const auto& n) { return eval_node(n, e.where); }, e.node);
  }

 private:
  void statement(const Stmt& s) {
    std::visit([&](const auto& n) { exec_node(n, s.where); }, s.node);
  }

  void exec_node(const Assign& n, const SourceLocation&) {
    Value v = eval(*n.value);
    if (n.name == kOutputVar) {
      state_.out_buffer = v.to_string();
    } else {
      state_.scope.insert_or_assign(n.name, std::move(v));
    }
  }

  void exec_node(const Echo& n, const SourceLocation&) {
    std::vector<Value> args;
    args.reserve(n.args.size());
    for (const auto& a : n.args) args.push_back(eval(*a));
    builtin_echo(args, state_);
  }

  void exec_node(const If& n, const SourceLocation&) {
    if (eval(*n.cond).truthy()) {
      run(n.then);
    } else if (n.otherwise) {
      run(*n.otherwise);
    }
  }

  void exec_node(const For& n, const SourceLocation&) {
    Value items = eval(*n.items);
    if (!items.is_list()) items = Value(Value::List{items});
    for (const auto& item : items.as_list()) {
      state_.scope.insert_or_assign(n.var, item);
      run(n.body);
    }
  }

  void exec_node(const ExprStmt& n, const SourceLocation&) { eval(*n.expr); }

  Value eval_node(const StringLit& n, const SourceLocation&) { return Value(n.value); }
  Value eval_node(const IntLit& n, const SourceLocation&) { return Value(n.value); }

  Value eval_node(const VarRef& n, const SourceLocation& where) {
    if (n.name == kOutputVar) return Value(state_.out_buffer);
    auto it = state_.scope.find(n.name);
    if (it == state_.scope.end()) runtime_error("undefined variable '$" + n.name + "'", where);
    return it->second;
  }

  Value eval_node(const Call& n, const SourceLocation& where) {
    const auto& table = builtins();
    auto it = table.find(n.name);
    if (it == table.end()) runtime_error("unknown function '" + n.name + "'", where);
    const Builtin& b = it->second;
    if (n.args.size() < b.min_args || n.args.size() > b.max_args) {
      runtime_error("function '" + n.name + "' expects " + std::to_string(b.min_args) +
                        " argument(s), got " + std::to_string(n.args.size()),
                    where);
    }
    std::vector<Value> args;
    args.reserve(n.args.size());
    for (const auto& a : n.args) args.push_back(eval(*a));
    try {
      return b.fn(args, state_);
    } catch (const Error& e) {
      if (e.where().known() || !e.where().file.empty()) throw;
      throw Error(e.kind(), e.message(), where);
    }
  }

  Value eval_node(const Concat& n, const SourceLocation&) {
    std::string out;
    for (const auto& p : n.parts) out += eval(*p).to_string();
    return Value(std::move(out));
  }

  Value eval_node(const Compare& n, const SourceLocation&) {
    Value lhs = eval(*n.lhs);
    Value rhs = eval(*n.rhs);
    switch (n.op) {
      case CompareOp::Eq:
        return Value(lhs.to_string() == rhs.to_string());
      case CompareOp::Ne:
        return Value(lhs.to_string() != rhs.to_string());
      case CompareOp::Lt:
        if (lhs.is_int() && rhs.is_int()) return Value(lhs.as_int() < rhs.as_int());
        return Value(lhs.to_string() < rhs.to_string());
      case CompareOp::Gt:
        if (lhs.is_int() && rhs.is_int()) return Value(lhs.as_int() > rhs.as_int());
        return Value(lhs.to_string() > rhs.to_string());
    }
    return Value(false);
  }

  Value eval_node(const Ternary& n, const SourceLocation&) {
    return eval(*n.cond).truthy() ? eval(*n.then) : eval(*n.otherwise);
  }

  EngineState& state_;
};

}  // namespace

std::string eval_program(const Program& program, EngineState& state) {
  state.out_buffer.clear();
  Interpreter(state).run(program.statements);
  return state.out_buffer;
}

void exec_program(const Program& program, EngineState& state) {
  std::string saved = std::move(state.out_buffer);
  state.out_buffer.clear();
  try {
    Interpreter(state).run(program.statements);
  } catch (...) {
    state.out_buffer = std::move(saved);
    throw;
  }
  state.out_buffer = std::move(saved);
}

Value eval_expression(const Expr& expr, EngineState& state) { return Interpreter(state).eval(expr); }

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : builtins()) out.push_back(name);
  return out;
}

}  // namespace textforge::scriptlet
