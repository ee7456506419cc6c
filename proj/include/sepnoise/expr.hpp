// Copyright 2026 The sepnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// Coefficient expressions: a small arithmetic language over the time
/// variable `t`, the constant `pi`, named parameters and the functions
/// sin, cos, exp, sqrt and pow.
///
///   expr    := term (('+' | '-') term)*
///   term    := power (('*' | '/') power)*
///   power   := unary ('^' power)?
///   unary   := '-' unary | primary
///   primary := number | name | name '(' args ')' | '(' expr ')'
///
/// Unary minus binds tighter than '^', so -2^2 is 4; '^' is right-associative.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepnoise/errors.hpp"

namespace sepnoise {

class CoeffExpr {
 public:
  enum class Kind { number, time, pi, param, neg, add, sub, mul, div, pow, call };

  struct Node {
    Kind kind = Kind::number;
    double value = 0.0;
    std::string name;  // parameter or function name
    std::size_t offset = 0;
    std::vector<std::shared_ptr<const Node>> args;
  };
  using NodePtr = std::shared_ptr<const Node>;

  CoeffExpr() : root_(std::make_shared<Node>()) {}
  explicit CoeffExpr(NodePtr root) : root_(std::move(root)) {}

  static CoeffExpr constant(double v) {
    auto n = std::make_shared<Node>();
    n->value = v;
    return CoeffExpr(n);
  }

  /// Evaluates at time t; every parameter must be present in `params`.
  double eval(double t, const std::map<std::string, double>& params = {}) const { return eval_node(*root_, t, &params); }

  bool depends_on_t() const { return uses_time(*root_); }

  /// Names of the parameters referenced, sorted.
  std::set<std::string> parameters() const {
    std::set<std::string> out;
    collect_params(*root_, out);
    return out;
  }

  /// Replaces parameters with their values; unknown names raise NameError.
  CoeffExpr bind(const std::map<std::string, double>& params) const { return CoeffExpr(bind_node(root_, params)); }

  /// Canonical text; parsing it back yields an expression that prints identically.
  std::string str() const { return print(*root_, 0); }

  const Node& root() const { return *root_; }

 private:
  NodePtr root_;

  static double call(const std::string& fn, const std::vector<double>& a) {
    if (fn == "sin") return std::sin(a[0]);
    if (fn == "cos") return std::cos(a[0]);
    if (fn == "exp") return std::exp(a[0]);
    if (fn == "sqrt") return std::sqrt(a[0]);
    return std::pow(a[0], a[1]);
  }

  static double eval_node(const Node& n, double t, const std::map<std::string, double>* params) {
    switch (n.kind) {
      case Kind::number: return n.value;
      case Kind::time: return t;
      case Kind::pi: return n.value;
      case Kind::param: {
        const auto it = params->find(n.name);
        if (it == params->end()) throw NameError("unbound parameter '" + n.name + "'", n.offset);
        return it->second;
      }
      case Kind::neg: return -eval_node(*n.args[0], t, params);
      case Kind::add: return eval_node(*n.args[0], t, params) + eval_node(*n.args[1], t, params);
      case Kind::sub: return eval_node(*n.args[0], t, params) - eval_node(*n.args[1], t, params);
      case Kind::mul: return eval_node(*n.args[0], t, params) * eval_node(*n.args[1], t, params);
      case Kind::div: return eval_node(*n.args[0], t, params) / eval_node(*n.args[1], t, params);
      case Kind::pow: return std::pow(eval_node(*n.args[0], t, params), eval_node(*n.args[1], t, params));
      case Kind::call: {
        std::vector<double> a;
        for (const auto& arg : n.args) a.push_back(eval_node(*arg, t, params));
        return call(n.name, a);
      }
    }
    return 0.0;
  }

  static bool uses_time(const Node& n) {
    if (n.kind == Kind::time) return true;
    for (const auto& a : n.args)
      if (uses_time(*a)) return true;
    return false;
  }

  static void collect_params(const Node& n, std::set<std::string>& out) {
    if (n.kind == Kind::param) out.insert(n.name);
    for (const auto& a : n.args) collect_params(*a, out);
  }

  static NodePtr bind_node(const NodePtr& n, const std::map<std::string, double>& params) {
    if (n->kind == Kind::param) {
      const auto it = params.find(n->name);
      if (it == params.end()) throw NameError("unknown parameter '" + n->name + "'", n->offset);
      auto c = std::make_shared<Node>();
      c->value = it->second;
      c->offset = n->offset;
      return c;
    }
    if (n->args.empty()) return n;
    auto copy = std::make_shared<Node>(*n);
    for (auto& a : copy->args) a = bind_node(a, params);
    return copy;
  }

  static int precedence(Kind k) {
    switch (k) {
      case Kind::add:
      case Kind::sub: return 1;
      case Kind::mul:
      case Kind::div: return 2;
      case Kind::pow: return 3;
      case Kind::neg: return 4;
      default: return 5;
    }
  }

  static std::string format_number(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("CoeffExpr: non-finite literal cannot be printed");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  /// `min_prec` is the lowest precedence that can appear without parentheses here.
  static std::string print(const Node& n, int min_prec) {
    std::string out;
    const int p = precedence(n.kind);
    switch (n.kind) {
      case Kind::number:
        out = format_number(n.value);
        // A negative literal behaves like a negation.
        if (n.value < 0 || (n.value == 0 && std::signbit(n.value))) {
          if (min_prec > precedence(Kind::neg)) return "(" + out + ")";
        }
        return out;
      case Kind::time: return "t";
      case Kind::pi: return "pi";
      case Kind::param: return n.name;
      case Kind::call: {
        out = n.name + "(";
        for (std::size_t i = 0; i < n.args.size(); ++i) out += (i ? ", " : "") + print(*n.args[i], 0);
        return out + ")";
      }
      case Kind::neg: out = "-" + print(*n.args[0], p); break;
      case Kind::pow: out = print(*n.args[0], p + 1) + "^" + print(*n.args[1], p); break;
      case Kind::add: out = print(*n.args[0], p) + " + " + print(*n.args[1], p + 1); break;
      case Kind::sub: out = print(*n.args[0], p) + " - " + print(*n.args[1], p + 1); break;
      case Kind::mul: out = print(*n.args[0], p) + "*" + print(*n.args[1], p + 1); break;
      case Kind::div: out = print(*n.args[0], p) + "/" + print(*n.args[1], p + 1); break;
    }
    return p < min_prec ? "(" + out + ")" : out;
  }
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::set<std::string>* params) : text_(text), params_(params) {}

  CoeffExpr::NodePtr parse() {
    auto n = parse_expr();
    skip_space();
    if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return n;
  }

 private:
  using Node = CoeffExpr::Node;
  using Kind = CoeffExpr::Kind;
  using NodePtr = CoeffExpr::NodePtr;

  std::string_view text_;
  const std::set<std::string>* params_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Kind k, NodePtr a, NodePtr b, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->offset = offset;
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr parse_expr() {
    if (++depth_ > 200) throw ParseError("expression nested too deeply", pos_);
    auto lhs = parse_term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = binary(Kind::add, lhs, parse_term(), at);
      } else if (accept('-')) {
        lhs = binary(Kind::sub, lhs, parse_term(), at);
      } else {
        break;
      }
    }
    --depth_;
    return lhs;
  }

  NodePtr parse_term() {
    auto lhs = parse_power();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = binary(Kind::mul, lhs, parse_power(), at);
      } else if (accept('/')) {
        lhs = binary(Kind::div, lhs, parse_power(), at);
      } else {
        break;
      }
    }
    return lhs;
  }

  NodePtr parse_power() {
    auto base = parse_unary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) {
      if (++depth_ > 200) throw ParseError("expression nested too deeply", pos_);
      auto exponent = parse_power();
      --depth_;
      return binary(Kind::pow, base, exponent, at);
    }
    return base;
  }

  NodePtr parse_unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) {
      if (++depth_ > 200) throw ParseError("expression nested too deeply", pos_);
      auto n = std::make_shared<Node>();
      n->kind = Kind::neg;
      n->offset = at;
      n->args = {parse_unary()};
      --depth_;
      return n;
    }
    return parse_primary();
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    const char* begin = text_.data() + pos_;
    // strtod needs a terminated buffer; copy the longest numeric-looking run.
    std::size_t end = pos_;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
                                  text_[end] == 'e' || text_[end] == 'E' ||
                                  ((text_[end] == '+' || text_[end] == '-') && end > pos_ &&
                                   (text_[end - 1] == 'e' || text_[end - 1] == 'E'))))
      ++end;
    const std::string chunk(begin, end - pos_);
    char* stop = nullptr;
    const double v = std::strtod(chunk.c_str(), &stop);
    const std::size_t used = static_cast<std::size_t>(stop - chunk.c_str());
    if (used == 0) throw ParseError("malformed number", start);
    pos_ += used;
    if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      throw ParseError("malformed number", pos_);
    auto n = std::make_shared<Node>();
    n->value = v;
    n->offset = start;
    return n;
  }

  static int arity(const std::string& fn) {
    if (fn == "sin" || fn == "cos" || fn == "exp" || fn == "sqrt") return 1;
    if (fn == "pow") return 2;
    return -1;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      skip_space();
      auto n = std::make_shared<Node>();
      n->offset = start;
      if (pos_ < text_.size() && text_[pos_] == '(') {
        const int want = arity(name);
        if (want < 0) throw NameError("unknown function '" + name + "'", start);
        ++pos_;
        n->kind = Kind::call;
        n->name = name;
        n->args.push_back(parse_expr());
        while ((skip_space(), pos_ < text_.size()) && text_[pos_] == ',') {
          if (static_cast<int>(n->args.size()) >= want)
            throw ParseError("'" + name + "' takes " + std::to_string(want) + " argument(s)", pos_);
          ++pos_;
          n->args.push_back(parse_expr());
        }
        if (!accept(')')) throw ParseError("expected ')' after arguments of '" + name + "'", pos_);
        if (static_cast<int>(n->args.size()) != want)
          throw ParseError("'" + name + "' takes " + std::to_string(want) + " argument(s)", pos_ - 1);
        return n;
      }
      if (name == "t") {
        n->kind = Kind::time;
        return n;
      }
      if (name == "pi") {
        n->value = 3.14159265358979323846;
        n->kind = Kind::pi;
        return n;
      }
      if (arity(name) >= 0) throw ParseError("function '" + name + "' needs an argument list", start);
      if (!params_ || !params_->count(name)) throw NameError("unknown identifier '" + name + "'", start);
      n->kind = Kind::param;
      n->name = name;
      return n;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", start);
  }
};

}  // namespace detail

/// Parses `text`. Identifiers other than t, pi and the built-in functions must
/// appear in `params`; an unknown one raises NameError at its byte offset.
inline CoeffExpr parse_expr(std::string_view text, const std::set<std::string>& params = {}) {
  return CoeffExpr(detail::ExprParser(text, &params).parse());
}

}  // namespace sepnoise
