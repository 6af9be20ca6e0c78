#include "cdt/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cdt/error.hpp"

namespace cdt {

namespace {

using Kind = ExprNode::Kind;

ExprAst make(Kind kind, ExprAst left = nullptr, ExprAst right = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

ExprAst number(double v) {
  auto node = std::make_shared<ExprNode>();
  node->value = v;
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprAst parse() {
    skip();
    if (pos_ == text_.size()) throw ParseError(pos_, {"expression"}, "empty expression");
    ExprAst e = expr();
    skip();
    if (pos_ != text_.size()) error({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void error(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + e;
    throw ParseError(pos_, std::move(expected),
                     "at offset " + std::to_string(pos_) + ": found " + found + ", expected one of " + list);
  }

  ExprAst expr() {
    ExprAst lhs = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      lhs = make(c == '+' ? Kind::Add : Kind::Sub, lhs, term());
    }
    return lhs;
  }

  ExprAst term() {
    ExprAst lhs = factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      ++pos_;
      lhs = make(c == '*' ? Kind::Mul : Kind::Div, lhs, factor());
    }
    return lhs;
  }

  ExprAst factor() {
    ExprAst base = atom();
    if (peek() == '^') {
      ++pos_;
      return make(Kind::Pow, base, factor());
    }
    return base;
  }

  ExprAst atom() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return make(Kind::Neg, atom());
    }
    if (c == '(') {
      ++pos_;
      ExprAst inner = expr();
      if (peek() != ')') error({")"});
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") return make(Kind::Variable);
      if (word == "exp" || word == "log" || word == "sqrt" || word == "abs") {
        if (peek() != '(') error({"("});
        ++pos_;
        auto node = std::make_shared<ExprNode>();
        node->kind = Kind::Call;
        node->function = std::string(word);
        node->left = expr();
        if (peek() != ')') error({")"});
        ++pos_;
        return node;
      }
      pos_ = start;
      error({"x", "exp", "log", "sqrt", "abs"});
    }
    error({"number", "x", "exp", "log", "sqrt", "abs", "(", "-"});
  }

  ExprAst literal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      error({"number"});
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark + 1;
        error({"exponent digits"});
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    return number(std::strtod(token.c_str(), nullptr));
  }
};

std::string format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_var(const ExprAst& a) { return a && a->kind == Kind::Variable; }
bool is_num(const ExprAst& a) { return a && a->kind == Kind::Number; }

}  // namespace

ExprAst parse_expression(std::string_view text) { return Parser(text).parse(); }

double evaluate(const ExprAst& ast, double x) {
  switch (ast->kind) {
    case Kind::Number: return ast->value;
    case Kind::Variable: return x;
    case Kind::Add: return evaluate(ast->left, x) + evaluate(ast->right, x);
    case Kind::Sub: return evaluate(ast->left, x) - evaluate(ast->right, x);
    case Kind::Mul: return evaluate(ast->left, x) * evaluate(ast->right, x);
    case Kind::Div: return evaluate(ast->left, x) / evaluate(ast->right, x);
    case Kind::Pow: {
      if (is_num(ast->right) && ast->right->value == 2.0) {
        const double b = evaluate(ast->left, x);
        return b * b;
      }
      return std::pow(evaluate(ast->left, x), evaluate(ast->right, x));
    }
    case Kind::Neg: return -evaluate(ast->left, x);
    case Kind::Call: {
      const double a = evaluate(ast->left, x);
      if (ast->function == "exp") return std::exp(a);
      if (ast->function == "log") return std::log(a);
      if (ast->function == "sqrt") return std::sqrt(a);
      return std::abs(a);
    }
  }
  return std::nan("");
}

std::string to_string(const ExprAst& ast) {
  switch (ast->kind) {
    case Kind::Number: return format(ast->value);
    case Kind::Variable: return "x";
    case Kind::Add: return "(" + to_string(ast->left) + " + " + to_string(ast->right) + ")";
    case Kind::Sub: return "(" + to_string(ast->left) + " - " + to_string(ast->right) + ")";
    case Kind::Mul: return "(" + to_string(ast->left) + " * " + to_string(ast->right) + ")";
    case Kind::Div: return "(" + to_string(ast->left) + " / " + to_string(ast->right) + ")";
    case Kind::Pow: return "(" + to_string(ast->left) + " ^ " + to_string(ast->right) + ")";
    case Kind::Neg: return "(-" + to_string(ast->left) + ")";
    case Kind::Call: return ast->function + "(" + to_string(ast->left) + ")";
  }
  return "?";
}

std::optional<ScalarFn> recognized_derivative(const ExprAst& ast) {
  if (is_var(ast)) return ScalarFn([](double) { return 1.0; });
  if (ast->kind == Kind::Mul && is_num(ast->left) && is_var(ast->right)) {
    const double c = ast->left->value;
    return ScalarFn([c](double) { return c; });
  }
  if (ast->kind == Kind::Pow && is_var(ast->left) && is_num(ast->right)) {
    const double c = ast->right->value;
    return ScalarFn([c](double x) { return c == 2.0 ? 2.0 * x : c * std::pow(x, c - 1.0); });
  }
  if (ast->kind == Kind::Div && is_num(ast->left) && is_var(ast->right)) {
    const double c = ast->left->value;
    return ScalarFn([c](double x) { return -c / (x * x); });
  }
  if (ast->kind == Kind::Call && is_var(ast->left)) {
    if (ast->function == "exp") return ScalarFn([](double x) { return std::exp(x); });
    if (ast->function == "log") return ScalarFn([](double x) { return 1.0 / x; });
    if (ast->function == "sqrt") return ScalarFn([](double x) { return 0.5 / std::sqrt(x); });
  }
  return std::nullopt;
}

FunctionModel expression_function(std::string_view text, const Interval& domain) {
  const ExprAst ast = parse_expression(text);
  return FunctionModel(std::string(text), domain, [ast](double x) { return evaluate(ast, x); },
                       recognized_derivative(ast));
}

Generator expression_generator(std::string_view text, const Interval& domain) {
  const ExprAst ast = parse_expression(text);
  auto forward = [ast](double x) { return evaluate(ast, x); };
  const Interval start = sample_range(domain);
  auto inverse = [forward, domain, start](double y) {
    double a = start.lo;
    double b = start.hi;
    for (int it = 0; it < 2000 && forward(a) > y; ++it) {
      const double next = std::isfinite(domain.lo) ? 0.5 * (a + domain.lo) : a - 2.0 * std::abs(a) - 1.0;
      if (next == a) break;
      a = next;
    }
    for (int it = 0; it < 2000 && forward(b) < y; ++it) {
      const double next = std::isfinite(domain.hi) ? 0.5 * (b + domain.hi) : b + 2.0 * std::abs(b) + 1.0;
      if (next == b) break;
      b = next;
    }
    if (forward(a) > y || forward(b) < y) return std::nan("");
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (a + b);
      if (!(mid > a && mid < b)) break;
      if (forward(mid) < y)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  };
  return Generator(std::string(text), domain, forward, inverse, recognized_derivative(ast));
}

}  // namespace cdt
