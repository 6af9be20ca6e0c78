#include "cdt/function_model.hpp"

#include <cmath>
#include <utility>

#include "cdt/error.hpp"

namespace cdt {

FunctionModel::FunctionModel(std::string id, Interval domain, ScalarFn eval,
                             std::optional<ScalarFn> derivative)
    : id_(std::move(id)), domain_(domain), eval_(std::move(eval)), derivative_(std::move(derivative)) {}

FunctionModel FunctionModel::from_generator(const Generator& g) {
  if (g.has_analytic_derivative())
    return FunctionModel(g.id(), g.domain(), [g](double x) { return g(x); },
                         ScalarFn([g](double x) { return g.derivative(x); }));
  return FunctionModel(g.id(), g.domain(), [g](double x) { return g(x); });
}

double FunctionModel::derivative(double x) const {
  if (derivative_) return (*derivative_)(x);
  return central_difference(eval_, x);
}

FunctionModel FunctionModel::restricted(const Interval& sub) const {
  if (sub.lo < domain_.lo || sub.hi > domain_.hi)
    fail(ErrorKind::Domain, sub.to_string() + " is not inside the domain of " + id_);
  FunctionModel copy = *this;
  copy.domain_ = sub;
  return copy;
}

namespace functions {

FunctionModel identity() {
  return {"x", Interval::real_line(), [](double x) { return x; }, ScalarFn([](double) { return 1.0; })};
}

FunctionModel square() {
  return {"x^2", Interval::real_line(), [](double x) { return x * x; },
          ScalarFn([](double x) { return 2.0 * x; })};
}

FunctionModel exp() {
  return {"exp(x)", Interval::real_line(), [](double x) { return std::exp(x); },
          ScalarFn([](double x) { return std::exp(x); })};
}

FunctionModel exp_square() {
  return {"exp(x^2)", Interval::real_line(), [](double x) { return std::exp(x * x); },
          ScalarFn([](double x) { return 2.0 * x * std::exp(x * x); })};
}

FunctionModel sinh() {
  return {"sinh(x)", Interval::positive_reals(), [](double x) { return std::sinh(x); },
          ScalarFn([](double x) { return std::cosh(x); })};
}

FunctionModel exp_log_squared() {
  return {"exp(log(x)^2)", Interval::positive_reals(),
          [](double x) {
            const double l = std::log(x);
            return std::exp(l * l);
          },
          ScalarFn([](double x) {
            const double l = std::log(x);
            return 2.0 * l / x * std::exp(l * l);
          })};
}

FunctionModel inverse() {
  return {"1/x", Interval::positive_reals(), [](double x) { return 1.0 / x; },
          ScalarFn([](double x) { return -1.0 / (x * x); })};
}

FunctionModel inv_x_log_x() {
  return {"1/(x*log(x))", Interval{1.0, kInf}, [](double x) { return 1.0 / (x * std::log(x)); },
          ScalarFn([](double x) {
            const double l = std::log(x);
            return -(l + 1.0) / (x * x * l * l);
          })};
}

FunctionModel x_log_x() {
  return {"x*log(x)", Interval::positive_reals(), [](double x) { return x * std::log(x); },
          ScalarFn([](double x) { return std::log(x) + 1.0; })};
}

FunctionModel log() {
  return {"log(x)", Interval::positive_reals(), [](double x) { return std::log(x); },
          ScalarFn([](double x) { return 1.0 / x; })};
}

FunctionModel softplus() {
  return {"log(1+exp(x))", Interval::real_line(),
          [](double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); },
          ScalarFn([](double x) { return 1.0 / (1.0 + std::exp(-x)); })};
}

}  // namespace functions

}  // namespace cdt
