#pragma once

#include <optional>
#include <string>

#include "cdt/generator.hpp"
#include "cdt/interval.hpp"

namespace cdt {

// Scalar function F with optional analytic derivative, candidate generator of
// comparative-convexity divergences.
class FunctionModel {
 public:
  FunctionModel(std::string id, Interval domain, ScalarFn eval,
                std::optional<ScalarFn> derivative = std::nullopt);

  static FunctionModel from_generator(const Generator& g);

  const std::string& id() const noexcept { return id_; }
  const Interval& domain() const noexcept { return domain_; }
  double operator()(double x) const { return eval_(x); }
  double derivative(double x) const;
  bool has_analytic_derivative() const noexcept { return derivative_.has_value(); }

  // Copy restricted to a sub-interval of the domain.
  FunctionModel restricted(const Interval& sub) const;

 private:
  std::string id_;
  Interval domain_;
  ScalarFn eval_;
  std::optional<ScalarFn> derivative_;
};

// Built-in corpus with analytic derivatives.
namespace functions {
FunctionModel identity();
FunctionModel square();           // x^2
FunctionModel exp();              // e^x
FunctionModel exp_square();       // exp(x^2)
FunctionModel sinh();             // on (0, inf)
FunctionModel exp_log_squared();  // exp(log^2 x) on (0, inf)
FunctionModel inverse();          // 1/x on (0, inf)
FunctionModel inv_x_log_x();      // 1/(x log x) on (1, inf)
FunctionModel x_log_x();          // x log x on (0, inf)
FunctionModel log();              // log x on (0, inf)
FunctionModel softplus();         // log(1 + e^x), Bernoulli log-normalizer
}  // namespace functions

}  // namespace cdt
