#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdt/function_model.hpp"
#include "cdt/generator.hpp"
#include "cdt/interval.hpp"

namespace cdt {

struct ExprNode {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

  Kind kind = Kind::Number;
  double value = 0.0;        // Number
  std::string function;      // Call: exp, log, sqrt, abs
  std::shared_ptr<const ExprNode> left;   // operand of Neg and Call
  std::shared_ptr<const ExprNode> right;
};

using ExprAst = std::shared_ptr<const ExprNode>;

// expr   := term (('+' | '-') term)*
// term   := factor (('*' | '/') factor)*
// factor := atom ('^' factor)?
// atom   := number | 'x' | func '(' expr ')' | '(' expr ')' | '-' atom
ExprAst parse_expression(std::string_view text);

double evaluate(const ExprAst& ast, double x);

std::string to_string(const ExprAst& ast);

// Analytic derivative for x, c*x, x^c, c/x, exp(x), log(x) and sqrt(x);
// nullopt otherwise.
std::optional<ScalarFn> recognized_derivative(const ExprAst& ast);

FunctionModel expression_function(std::string_view text, const Interval& domain = Interval::real_line());

// Increasing generator from an expression; the inverse is found by bracketing
// and bisection.
Generator expression_generator(std::string_view text, const Interval& domain = Interval::real_line());

}  // namespace cdt
