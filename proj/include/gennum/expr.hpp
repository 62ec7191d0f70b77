#ifndef GENNUM_EXPR_HPP
#define GENNUM_EXPR_HPP

// Net-expression grammar:
//
//   expr := number | "eps" | name | xI
//         | expr ("+" | "-" | "*" | "/") expr | "-" expr | "(" expr ")"
//         | "pow" "(" expr "," integer ")" | fn "(" expr ")" | "chi" "(" set ")"
//   fn   := exp | abs | sqrt | sin | cos | tanh | cosh | sinh | bump
//   set  := "even" | "odd" | "all" | "pow2" | "ap" "(" int "," int ")" | "{" int, ... "}"
//
// Coordinate symbols x1..xn only exist in field mode.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gennum/gen_number.hpp"
#include "gennum/mollifier.hpp"

namespace gennum::expr {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

enum class Tok { Number, Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long double number = 0;
  int line = 1, column = 1;
};

inline std::vector<Token> tokenize(const std::string& src, int line = 1, int column0 = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    const int col = column0 + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '#') break;
    Token t;
    t.line = line;
    t.column = col;
    if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      if (std::count(t.text.begin(), t.text.end(), '.') > 1) throw ParseError(line, col, "malformed number '" + t.text + "'");
      t.number = std::stold(t.text);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      i = j;
    } else if (std::string_view("+-*/(),[]{}=").find(ch) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, ch);
      ++i;
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = column0 + static_cast<int>(src.size());
  out.push_back(end);
  return out;
}

enum class Kind { Number, Eps, Coord, Name, Neg, Add, Sub, Mul, Div, Pow, Call, Chi };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::Number;
  long double number = 0;
  std::string text;  // number literal, name or function name
  int index = 0;     // coordinate index (0-based) or pow exponent
  std::optional<IndexSet> set;
  std::vector<NodePtr> args;
  int line = 1, column = 1;
};

inline std::string to_string(const Node& n) {
  auto bin = [&](const char* op) { return "(" + to_string(*n.args[0]) + " " + op + " " + to_string(*n.args[1]) + ")"; };
  switch (n.kind) {
    case Kind::Number: return n.text;
    case Kind::Eps: return "eps";
    case Kind::Coord: return "x" + std::to_string(n.index + 1);
    case Kind::Name: return n.text;
    case Kind::Neg: return "-" + to_string(*n.args[0]);
    case Kind::Add: return bin("+");
    case Kind::Sub: return bin("-");
    case Kind::Mul: return bin("*");
    case Kind::Div: return bin("/");
    case Kind::Pow: return "pow(" + to_string(*n.args[0]) + ", " + std::to_string(n.index) + ")";
    case Kind::Call: return n.text + "(" + to_string(*n.args[0]) + ")";
    case Kind::Chi: return "chi(" + n.set->to_string() + ")";
  }
  return "?";
}

inline const std::vector<std::string>& function_names() {
  static const std::vector<std::string> f{"exp", "abs", "sqrt", "sin", "cos", "tanh", "cosh", "sinh", "bump"};
  return f;
}

/// Recursive-descent parser over a token stream. `coords` is the number of
/// coordinate symbols in scope (0 in net mode).
class Parser {
 public:
  explicit Parser(std::vector<Token> toks, int coords = 0) : toks_(std::move(toks)), coords_(coords) {}

  void set_coords(int n) { coords_ = n; }

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }

  Token take() {
    Token t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  Token expect(const char* p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    return take();
  }

  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected a name");
    return take().text;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, msg + (t.kind == Tok::End ? " at end of input" : ""));
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (is_punct("+") || is_punct("-")) {
      const Token op = take();
      lhs = binary(op.text == "+" ? Kind::Add : Kind::Sub, op, lhs, term());
    }
    return lhs;
  }

  int integer() {
    bool neg = false;
    if (is_punct("-")) {
      take();
      neg = true;
    }
    if (peek().kind != Tok::Number || peek().text.find_first_of(".eE") != std::string::npos) fail("expected an integer");
    const long double v = take().number;
    if (v > 1e6L) fail("integer out of range");
    return neg ? -static_cast<int>(v) : static_cast<int>(v);
  }

 private:
  NodePtr binary(Kind k, const Token& at, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = {std::move(a), std::move(b)};
    n->line = at.line;
    n->column = at.column;
    return n;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token op = take();
      lhs = binary(op.text == "*" ? Kind::Mul : Kind::Div, op, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (is_punct("-")) {
      const Token op = take();
      auto n = std::make_shared<Node>();
      n->kind = Kind::Neg;
      n->args = {unary()};
      n->line = op.line;
      n->column = op.column;
      return n;
    }
    if (is_punct("+")) {
      take();
      return unary();
    }
    return primary();
  }

  IndexSet index_set() {
    if (is_punct("{")) {
      take();
      std::vector<int> ks;
      if (!is_punct("}")) {
        ks.push_back(integer());
        while (is_punct(",")) {
          take();
          ks.push_back(integer());
        }
      }
      expect("}");
      for (int k : ks)
        if (k < 1) fail("grid indices start at 1");
      return IndexSet::explicit_set(ks);
    }
    const std::string s = expect_ident();
    if (s == "even") return IndexSet::even();
    if (s == "odd") return IndexSet::odd();
    if (s == "all") return IndexSet::all();
    if (s == "pow2") return IndexSet::powers_of_two();
    if (s == "ap") {
      expect("(");
      const int a = integer();
      expect(",");
      const int d = integer();
      expect(")");
      if (a < 1 || d < 1) fail("ap(a, d) needs a >= 1 and d >= 1");
      return IndexSet::progression(a, d);
    }
    --pos_;
    fail("unknown index set '" + s + "'");
  }

  NodePtr primary() {
    const Token t = peek();
    auto n = std::make_shared<Node>();
    n->line = t.line;
    n->column = t.column;
    if (t.kind == Tok::Number) {
      take();
      n->kind = Kind::Number;
      n->number = t.number;
      n->text = t.text;
      return n;
    }
    if (is_punct("(")) {
      take();
      NodePtr e = expression();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "expected an expression" : "unexpected '" + t.text + "'");
    take();
    const std::string& id = t.text;
    if (id == "eps") {
      n->kind = Kind::Eps;
      return n;
    }
    if (id == "pow") {
      expect("(");
      n->kind = Kind::Pow;
      n->args = {expression()};
      expect(",");
      n->index = integer();
      expect(")");
      return n;
    }
    if (id == "chi") {
      expect("(");
      n->kind = Kind::Chi;
      n->set = index_set();
      expect(")");
      return n;
    }
    if (std::find(function_names().begin(), function_names().end(), id) != function_names().end() && is_punct("(")) {
      take();
      n->kind = Kind::Call;
      n->text = id;
      n->args = {expression()};
      expect(")");
      return n;
    }
    if (coords_ > 0 && id.size() > 1 && id[0] == 'x' && std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int i = std::stoi(id.substr(1));
      if (i < 1 || i > coords_) throw ParseError(t.line, t.column, "coordinate " + id + " outside dimension " + std::to_string(coords_));
      n->kind = Kind::Coord;
      n->index = i - 1;
      return n;
    }
    n->kind = Kind::Name;
    n->text = id;
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int coords_ = 0;
};

/// Parses a complete expression.
inline NodePtr parse(const std::string& src, int line = 1, int column0 = 1, int coords = 0) {
  Parser p(tokenize(src, line, column0), coords);
  NodePtr e = p.expression();
  p.expect_end();
  return e;
}

/// Name lookup for previously defined nets.
using NetEnv = std::function<const gen_number*(const std::string&)>;

inline std::string where(const Node& n) {
  return "line " + std::to_string(n.line) + ", column " + std::to_string(n.column);
}

inline const gen_number& lookup(const NetEnv& env, const Node& n) {
  const gen_number* x = env ? env(n.text) : nullptr;
  if (!x) throw Error(ErrorCode::UnknownName, "'" + n.text + "' at " + where(n) + " is not a defined number");
  return *x;
}

/// Net mode: evaluates the expression to a generalized number on `grid`.
inline gen_number eval_net(const Node& n, const EpsGrid& grid, const NetEnv& env = {}) {
  auto arg = [&](int i) { return eval_net(*n.args[i], grid, env); };
  switch (n.kind) {
    case Kind::Number: return gen_number::constant(n.number, grid).with_label(n.text);
    case Kind::Eps: return gen_number::eps(grid);
    case Kind::Coord: throw Error(ErrorCode::TypeMismatch, "coordinate symbol at " + where(n) + " outside a field definition");
    case Kind::Name: {
      const gen_number& x = lookup(env, n);
      if (!(x.grid() == grid)) throw Error(ErrorCode::GridMismatch, "'" + n.text + "' lives on another grid");
      return x;
    }
    case Kind::Neg: return -arg(0);
    case Kind::Add: return arg(0) + arg(1);
    case Kind::Sub: return arg(0) - arg(1);
    case Kind::Mul: return arg(0) * arg(1);
    case Kind::Div: {
      const gen_number num = arg(0), den = arg(1);
      const Verdict inv = is_invertible(den);
      if (!inv.is_holds())
        throw Error(ErrorCode::DivisionByNonInvertible, "divisor " + to_string(*n.args[1]) + " at " + where(n) + " is not invertible (" +
                                                           std::string(gennum::to_string(inv.status)) + ")");
      return num / den;
    }
    case Kind::Pow: {
      const gen_number b = arg(0);
      if (n.index < 0 && !is_invertible(b).is_holds())
        throw Error(ErrorCode::DivisionByNonInvertible, "negative power of non-invertible " + to_string(*n.args[0]) + " at " + where(n));
      return pow(b, n.index);
    }
    case Kind::Call: {
      const gen_number a = arg(0);
      if (n.text == "exp") return exp(a);
      if (n.text == "abs") return abs(a);
      if (n.text == "sqrt") return sqrt(a);
      if (n.text == "sin") return sin(a);
      if (n.text == "cos") return cos(a);
      if (n.text == "tanh") return tanh(a);
      if (n.text == "cosh") return cosh(a);
      if (n.text == "sinh") return sinh(a);
      return bump(a);
    }
    case Kind::Chi: return gen_number::chi(*n.set, grid);
  }
  throw Error(ErrorCode::ParseError, "bad node");
}

/// Parses and evaluates in one step; the result is labelled with the source.
inline gen_number parse_net(const std::string& src, const EpsGrid& grid, const NetEnv& env = {}, int line = 1, int column0 = 1) {
  const NodePtr e = parse(src, line, column0);
  return eval_net(*e, grid, env).with_label(src);
}

/// Field mode: pointwise evaluation at (eps, x). Names refer to nets and are
/// evaluated at eps; division is classical.
inline long double eval_point(const Node& n, long double e, const std::vector<long double>& x, const NetEnv& env) {
  auto arg = [&](int i) { return eval_point(*n.args[i], e, x, env); };
  switch (n.kind) {
    case Kind::Number: return n.number;
    case Kind::Eps: return e;
    case Kind::Coord: return x.at(n.index);
    case Kind::Name: return lookup(env, n).evaluate(e);
    case Kind::Neg: return -arg(0);
    case Kind::Add: return arg(0) + arg(1);
    case Kind::Sub: return arg(0) - arg(1);
    case Kind::Mul: return arg(0) * arg(1);
    case Kind::Div: return arg(0) / arg(1);
    case Kind::Pow: return std::pow(arg(0), n.index);
    case Kind::Call: {
      const long double a = arg(0);
      if (n.text == "exp") return std::exp(a);
      if (n.text == "abs") return std::fabs(a);
      if (n.text == "sqrt") return std::sqrt(a);
      if (n.text == "sin") return std::sin(a);
      if (n.text == "cos") return std::cos(a);
      if (n.text == "tanh") return std::tanh(a);
      if (n.text == "cosh") return std::cosh(a);
      if (n.text == "sinh") return std::sinh(a);
      return bump(a);
    }
    case Kind::Chi: return n.set->contains(grid_index_of(e)) ? 1 : 0;
  }
  return 0;
}

/// Checks that every name in the tree resolves, so that field evaluation
/// cannot fail later on a lookup.
inline void check_names(const Node& n, const NetEnv& env) {
  if (n.kind == Kind::Name) lookup(env, n);
  for (const auto& a : n.args) check_names(*a, env);
}

}  // namespace gennum::expr

#endif  // GENNUM_EXPR_HPP
