#include <cctype>
#include <charconv>

#include "textforge/scriptlet.hpp"

namespace textforge::scriptlet {

namespace {

enum class Kind { End, Variable, Name, Keyword, String, Int, Punct };

struct StringPart {
  bool is_variable = false;
  std::string text;
};

struct Token {
  Kind kind = Kind::End;
  std::string text;  // name, keyword, punctuation or verbatim string body
  std::vector<StringPart> parts;  // string tokens
  bool interpolating = false;     // double-quoted
  std::int64_t number = 0;
  SourceLocation where;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_keyword(std::string_view s) {
  return s == "echo" || s == "if" || s == "else" || s == "for" || s == "in";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.where = here();
      if (pos_ >= src_.size()) {
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[pos_];
      if (c == '$') {
        advance();
        if (pos_ >= src_.size() || !is_ident_start(src_[pos_])) {
          fail("expected variable name after '$'", t.where);
        }
        t.kind = Kind::Variable;
        t.text = ident();
      } else if (is_ident_start(c)) {
        t.text = ident();
        t.kind = is_keyword(t.text) ? Kind::Keyword : Kind::Name;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        t.kind = Kind::Int;
        t.text = std::string(src_.substr(start, pos_ - start));
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc()) fail("integer literal out of range", t.where);
      } else if (c == '\'') {
        single_quoted(t);
      } else if (c == '"') {
        if (src_.substr(pos_).starts_with("\"\"\"")) {
          triple_quoted(t);
        } else {
          double_quoted(t);
        }
      } else {
        punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg, SourceLocation where) {
    throw Error(ErrorKind::Parse, msg, std::move(where));
  }

  SourceLocation here() const {
    SourceLocation loc;
    loc.line = line_;
    loc.column = column_;
    return loc;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  void single_quoted(Token& t) {
    advance();
    std::string value;
    for (;;) {
      if (pos_ >= src_.size()) fail("unterminated string", t.where);
      char c = src_[pos_];
      if (c == '\'') {
        advance();
        break;
      }
      if (c == '\\' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == '\'' || src_[pos_ + 1] == '\\')) {
        advance();
        value += src_[pos_];
        advance();
        continue;
      }
      value += c;
      advance();
    }
    t.kind = Kind::String;
    t.parts.push_back({false, std::move(value)});
  }

  void triple_quoted(Token& t) {
    for (int i = 0; i < 3; ++i) advance();
    std::size_t close = src_.find("\"\"\"", pos_);
    if (close == std::string_view::npos) fail("unterminated triple-quoted string", t.where);
    std::string value(src_.substr(pos_, close - pos_));
    while (pos_ < close + 3) advance();
    t.kind = Kind::String;
    t.parts.push_back({false, std::move(value)});
  }

  void double_quoted(Token& t) {
    advance();
    t.kind = Kind::String;
    t.interpolating = true;
    std::string literal;
    auto flush = [&] {
      if (!literal.empty()) t.parts.push_back({false, std::move(literal)});
      literal.clear();
    };
    for (;;) {
      if (pos_ >= src_.size()) fail("unterminated string", t.where);
      char c = src_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        char n = src_[pos_ + 1];
        char decoded = 0;
        switch (n) {
          case 'n': decoded = '\n'; break;
          case 't': decoded = '\t'; break;
          case '\\': decoded = '\\'; break;
          case '"': decoded = '"'; break;
          case '$': decoded = '$'; break;
          default: break;
        }
        if (decoded != 0) {
          literal += decoded;
          advance();
          advance();
          continue;
        }
      }
      if (c == '$' && pos_ + 1 < src_.size() && is_ident_start(src_[pos_ + 1])) {
        flush();
        advance();
        t.parts.push_back({true, ident()});
        continue;
      }
      literal += c;
      advance();
    }
    flush();
  }

  void punct(Token& t) {
    static constexpr std::string_view two[] = {"==", "!="};
    for (auto op : two) {
      if (src_.substr(pos_).starts_with(op)) {
        advance();
        advance();
        t.kind = Kind::Punct;
        t.text = std::string(op);
        return;
      }
    }
    char c = src_[pos_];
    if (std::string_view("=<>?:.,;(){}").find(c) == std::string_view::npos) {
      fail(std::string("unexpected character '") + c + "'", t.where);
    }
    advance();
    t.kind = Kind::Punct;
    t.text = std::string(1, c);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

template <typename Node>
ExprPtr make_expr(SourceLocation where, Node node) {
  auto e = std::make_unique<Expr>();
  e->where = std::move(where);
  e->node = std::move(node);
  return e;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (peek().kind != Kind::End) p.statements.push_back(statement());
    return p;
  }

  ExprPtr lone_expression() {
    auto e = expression();
    if (peek().kind != Kind::End) fail("unexpected " + describe(peek()) + " after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token take() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Kind::Punct && t.text == p;
  }
  bool is_keyword(std::string_view k) const {
    return peek().kind == Kind::Keyword && peek().text == k;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Kind::End: return "end of input";
      case Kind::Variable: return "'$" + t.text + "'";
      case Kind::String: return "string";
      case Kind::Int: return "integer " + t.text;
      default: return "'" + t.text + "'";
    }
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg, peek().where);
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
    take();
  }
  void terminator() {
    if (is_punct(";")) {
      take();
      return;
    }
    if (peek().kind == Kind::End || is_punct("}")) return;
    fail("expected ';', found " + describe(peek()));
  }

  Stmt statement() {
    Stmt s;
    s.where = peek().where;
    if (is_keyword("echo")) {
      take();
      Echo echo;
      echo.args.push_back(expression());
      while (is_punct(",")) {
        take();
        echo.args.push_back(expression());
      }
      terminator();
      s.node = std::move(echo);
    } else if (is_keyword("if")) {
      take();
      If node;
      expect("(");
      node.cond = expression();
      expect(")");
      node.then = block();
      if (is_keyword("else")) {
        take();
        node.otherwise = block();
      }
      s.node = std::move(node);
    } else if (is_keyword("for")) {
      take();
      For node;
      if (peek().kind != Kind::Variable) fail("expected loop variable, found " + describe(peek()));
      node.var = take().text;
      if (!is_keyword("in")) fail("expected 'in', found " + describe(peek()));
      take();
      node.items = expression();
      node.body = block();
      s.node = std::move(node);
    } else if (peek().kind == Kind::Variable && is_punct("=", 1)) {
      Assign a;
      a.name = take().text;
      take();
      a.value = expression();
      terminator();
      s.node = std::move(a);
    } else {
      ExprStmt e{expression()};
      terminator();
      s.node = std::move(e);
    }
    return s;
  }

  Block block() {
    expect("{");
    Block b;
    while (!is_punct("}")) {
      if (peek().kind == Kind::End) fail("expected '}', found end of input");
      b.push_back(statement());
    }
    take();
    return b;
  }

  ExprPtr expression() {
    auto cond = comparison();
    if (!is_punct("?")) return cond;
    SourceLocation where = cond->where;
    take();
    auto then = expression();
    expect(":");
    auto otherwise = expression();
    return make_expr(where, Ternary{std::move(cond), std::move(then), std::move(otherwise)});
  }

  ExprPtr comparison() {
    auto lhs = concatenation();
    static constexpr std::pair<std::string_view, CompareOp> ops[] = {
        {"==", CompareOp::Eq}, {"!=", CompareOp::Ne}, {"<", CompareOp::Lt}, {">", CompareOp::Gt}};
    for (auto [text, op] : ops) {
      if (is_punct(text)) {
        take();
        auto rhs = concatenation();
        SourceLocation where = lhs->where;
        return make_expr(where, Compare{op, std::move(lhs), std::move(rhs)});
      }
    }
    return lhs;
  }

  ExprPtr concatenation() {
    auto first = primary();
    if (!is_punct(".")) return first;
    SourceLocation where = first->where;
    Concat c;
    c.parts.push_back(std::move(first));
    while (is_punct(".")) {
      take();
      c.parts.push_back(primary());
    }
    return make_expr(where, std::move(c));
  }

  ExprPtr primary() {
    const Token& t = peek();
    SourceLocation where = t.where;
    switch (t.kind) {
      case Kind::String: {
        Token tok = take();
        return string_expr(tok);
      }
      case Kind::Int:
        return make_expr(where, IntLit{take().number});
      case Kind::Variable:
        return make_expr(where, VarRef{take().text});
      case Kind::Name: {
        Call call;
        call.name = take().text;
        if (is_punct("(")) {
          take();
          if (!is_punct(")")) {
            call.args.push_back(expression());
            while (is_punct(",")) {
              take();
              call.args.push_back(expression());
            }
          }
          expect(")");
        }
        return make_expr(where, std::move(call));
      }
      case Kind::Punct:
        if (t.text == "(") {
          take();
          auto inner = expression();
          expect(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expected expression, found " + describe(t));
  }

  static ExprPtr string_expr(const Token& tok) {
    if (!tok.interpolating) return make_expr(tok.where, StringLit{tok.parts.front().text});
    bool has_var = false;
    for (const auto& p : tok.parts) has_var = has_var || p.is_variable;
    if (!has_var) {
      return make_expr(tok.where, StringLit{tok.parts.empty() ? "" : tok.parts.front().text});
    }
    Concat c;
    c.interpolated = true;
    for (const auto& p : tok.parts) {
      if (p.is_variable) {
        c.parts.push_back(make_expr(tok.where, VarRef{p.text}));
      } else {
        c.parts.push_back(make_expr(tok.where, StringLit{p.text}));
      }
    }
    return make_expr(tok.where, std::move(c));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Formatting.

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '$': out += "\\$"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

void format_expr(const Expr& e, std::string& out);

void format_block(const Block& b, std::string& out, int depth);

void format_stmt(const Stmt& s, std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          out += "$" + n.name + " = ";
          format_expr(*n.value, out);
          out += ";\n";
        } else if constexpr (std::is_same_v<T, Echo>) {
          out += "echo ";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            format_expr(*n.args[i], out);
          }
          out += ";\n";
        } else if constexpr (std::is_same_v<T, If>) {
          out += "if (";
          format_expr(*n.cond, out);
          out += ") ";
          format_block(n.then, out, depth);
          if (n.otherwise) {
            out.pop_back();
            out += " else ";
            format_block(*n.otherwise, out, depth);
          }
        } else if constexpr (std::is_same_v<T, For>) {
          out += "for $" + n.var + " in ";
          format_expr(*n.items, out);
          out += " ";
          format_block(n.body, out, depth);
        } else {
          format_expr(*n.expr, out);
          out += ";\n";
        }
      },
      s.node);
}

void format_block(const Block& b, std::string& out, int depth) {
  out += "{\n";
  for (const auto& s : b) format_stmt(s, out, depth + 1);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "}\n";
}

void format_expr(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StringLit>) {
          out += quote(n.value);
        } else if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, VarRef>) {
          out += "$" + n.name;
        } else if constexpr (std::is_same_v<T, Call>) {
          out += n.name + "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            format_expr(*n.args[i], out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, Concat>) {
          out += "(";
          for (std::size_t i = 0; i < n.parts.size(); ++i) {
            if (i) out += " . ";
            format_expr(*n.parts[i], out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, Compare>) {
          static constexpr const char* names[] = {" == ", " != ", " < ", " > "};
          out += "(";
          format_expr(*n.lhs, out);
          out += names[static_cast<int>(n.op)];
          format_expr(*n.rhs, out);
          out += ")";
        } else {
          out += "(";
          format_expr(*n.cond, out);
          out += " ? ";
          format_expr(*n.then, out);
          out += " : ";
          format_expr(*n.otherwise, out);
          out += ")";
        }
      },
      e.node);
}

}  // namespace

Program parse(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.program();
}

ExprPtr parse_expression(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.lone_expression();
}

std::string format(const Program& program) {
  std::string out;
  for (const auto& s : program.statements) format_stmt(s, out, 0);
  return out;
}

std::string format(const Expr& expr) {
  std::string out;
  format_expr(expr, out);
  return out;
}

}  // namespace textforge::scriptlet
