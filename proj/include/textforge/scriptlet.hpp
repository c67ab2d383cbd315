#pragma once

#include <cstdint>
#include <ctime>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "textforge/core.hpp"
#include "textforge/error.hpp"
#include "textforge/value.hpp"

// Scriptlet: the snippet language.
//
//   program  := stmt*
//   stmt     := $var '=' expr ';' | 'echo' expr (',' expr)* ';'
//             | 'if' '(' expr ')' block ('else' block)?
//             | 'for' $var 'in' expr block | expr ';'
//   block    := '{' stmt* '}'
//   expr     := cmp ('?' expr ':' expr)?
//   cmp      := concat (('=='|'!='|'<'|'>') concat)?
//   concat   := primary ('.' primary)*
//   primary  := string | integer | $var | name ['(' [expr (',' expr)*] ')'] | '(' expr ')'
//
// The ';' ending the last statement of a program or block may be omitted, and
// a bare name is a call without arguments. Strings are '...' (escapes \' and
// \\), "..." (escapes \n \t \\ \" \$, `$name` interpolates) or """...""" (verbatim).
// '#' starts a comment running to the end of the line.

namespace textforge::scriptlet {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct StringLit {
  std::string value;
};
struct IntLit {
  std::int64_t value = 0;
};
struct VarRef {
  std::string name;
};
struct Call {
  std::string name;
  std::vector<ExprPtr> args;
};
struct Concat {
  std::vector<ExprPtr> parts;
  bool interpolated = false;  // built from a double-quoted string
};
enum class CompareOp { Eq, Ne, Lt, Gt };
struct Compare {
  CompareOp op = CompareOp::Eq;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Ternary {
  ExprPtr cond;
  ExprPtr then;
  ExprPtr otherwise;
};

struct Expr {
  SourceLocation where;
  std::variant<StringLit, IntLit, VarRef, Call, Concat, Compare, Ternary> node;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign {
  std::string name;
  ExprPtr value;
};
struct Echo {
  std::vector<ExprPtr> args;
};
struct If {
  ExprPtr cond;
  Block then;
  std::optional<Block> otherwise;
};
struct For {
  std::string var;
  ExprPtr items;
  Block body;
};
struct ExprStmt {
  ExprPtr expr;
};

struct Stmt {
  SourceLocation where;
  std::variant<Assign, Echo, If, For, ExprStmt> node;
};

struct Program {
  Block statements;
};

/// Throws Error(Parse) with a location relative to `source`.
Program parse(std::string_view source);

/// A single expression, e.g. the replacement of a literal hook.
ExprPtr parse_expression(std::string_view source);

/// Canonical source text; parse(format(p)) formats back to the same text.
std::string format(const Program& program);
std::string format(const Expr& expr);

/// Runs `program` against `state.scope`. `$O` is cleared first; the final
/// `$O` is returned. Throws Error(Runtime).
std::string eval_program(const Program& program, EngineState& state);

/// Runs `program` without touching `$O` (configuration code, `-e` code).
void exec_program(const Program& program, EngineState& state);

Value eval_expression(const Expr& expr, EngineState& state);

// Builtins callable from snippets.
void builtin_echo(const std::vector<Value>& args, EngineState& state);
std::string builtin_htmlquote(std::string_view s);
std::string builtin_file_modification_date(EngineState& state);
void builtin_set_style(std::string_view name, EngineState& state);
void builtin_add_hook(std::string begin, std::string end, EngineState& state);
void builtin_add_regex_hook(std::string pattern, std::string replacement, EngineState& state);
void builtin_set_out_delimiters(std::string b1, std::string b2, std::string e1, std::string e2,
                                EngineState& state);
Value::List builtin_glob(std::string_view pattern, const EngineState& state);
std::string builtin_join(std::string_view sep, const Value& list);
std::string builtin_strip_suffix(std::string_view s, std::string_view suffix);

/// "July 4, 2020" for `t` in local time.
std::string format_date(std::time_t t);

/// Names of every builtin function (echo is a statement).
std::vector<std::string> builtin_names();

}  // namespace textforge::scriptlet
