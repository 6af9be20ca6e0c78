#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "cdt/interval.hpp"

namespace cdt {

using ScalarFn = std::function<double(double)>;

// Central finite difference with step 1e-6 * max(1, |x|).
double central_difference(const ScalarFn& f, double x);

// Strictly increasing differentiable map with inverse. Generators define
// quasi-arithmetic means and the domain/codomain embeddings of Bregman
// generators. Decreasing generators are represented by their negation
// (M_{-f} = M_f), so `forward` is always increasing.
class Generator {
 public:
  Generator(std::string id, Interval domain, ScalarFn forward, ScalarFn inverse,
            std::optional<ScalarFn> derivative = std::nullopt,
            std::optional<double> power_exponent = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  const Interval& domain() const noexcept { return domain_; }

  double operator()(double x) const { return forward_(x); }
  double forward(double x) const { return forward_(x); }
  double inverse(double y) const { return inverse_(y); }
  // Analytic derivative when supplied, otherwise central finite difference.
  double derivative(double x) const;
  bool has_analytic_derivative() const noexcept { return derivative_.has_value(); }

  // delta when the generator induces the power mean P_delta (0 for log).
  std::optional<double> power_exponent() const noexcept { return power_exponent_; }

  // Image of the domain under forward (forward is increasing).
  Interval image() const;

 private:
  std::string id_;
  Interval domain_;
  ScalarFn forward_;
  ScalarFn inverse_;
  std::optional<ScalarFn> derivative_;
  std::optional<double> power_exponent_;
};

namespace generators {
Generator identity();
Generator log();
// x -> -1/x, the increasing representative of 1/x; id "reciprocal".
Generator reciprocal();
// sign(delta) x^delta on (0, inf); delta == 0 yields log.
Generator power(double delta);
Generator exp();
}  // namespace generators

// identity | id | log | reciprocal | exp | power:<delta>
Generator parse_generator(std::string_view text);

// Samples a 64-point grid of the domain and throws Domain if forward is not
// strictly increasing, the inverse does not round-trip to 1e-10 relative, or
// the derivative is not positive.
void validate_generator(const Generator& g);

}  // namespace cdt
