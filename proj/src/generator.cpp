#include "cdt/generator.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "cdt/error.hpp"

namespace cdt {

double central_difference(const ScalarFn& f, double x) {
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

Generator::Generator(std::string id, Interval domain, ScalarFn forward, ScalarFn inverse,
                     std::optional<ScalarFn> derivative, std::optional<double> power_exponent)
    : id_(std::move(id)),
      domain_(domain),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      derivative_(std::move(derivative)),
      power_exponent_(power_exponent) {}

double Generator::derivative(double x) const {
  if (derivative_) return (*derivative_)(x);
  return central_difference(forward_, x);
}

Interval Generator::image() const { return {forward_(domain_.lo), forward_(domain_.hi)}; }

namespace generators {

Generator identity() {
  return Generator(
      "identity", Interval::real_line(), [](double x) { return x; }, [](double y) { return y; },
      ScalarFn([](double) { return 1.0; }), 1.0);
}

Generator log() {
  return Generator(
      "log", Interval::positive_reals(), [](double x) { return std::log(x); },
      [](double y) { return std::exp(y); }, ScalarFn([](double x) { return 1.0 / x; }), 0.0);
}

Generator reciprocal() {
  return Generator(
      "reciprocal", Interval::positive_reals(), [](double x) { return -1.0 / x; },
      [](double y) { return -1.0 / y; }, ScalarFn([](double x) { return 1.0 / (x * x); }), -1.0);
}

Generator power(double delta) {
  if (delta == 0.0) return log();
  const double sign = delta > 0.0 ? 1.0 : -1.0;
  std::string id = "power:";
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", delta);
    id += buf;
  }
  return Generator(
      std::move(id), Interval::positive_reals(),
      [delta, sign](double x) { return sign * std::pow(x, delta); },
      [delta, sign](double y) { return std::pow(sign * y, 1.0 / delta); },
      ScalarFn([delta](double x) { return std::abs(delta) * std::pow(x, delta - 1.0); }), delta);
}

Generator exp() {
  return Generator(
      "exp", Interval::real_line(), [](double x) { return std::exp(x); },
      [](double y) { return std::log(y); }, ScalarFn([](double x) { return std::exp(x); }));
}

}  // namespace generators

Generator parse_generator(std::string_view text) {
  if (text == "identity" || text == "id") return generators::identity();
  if (text == "log") return generators::log();
  if (text == "reciprocal") return generators::reciprocal();
  if (text == "exp") return generators::exp();
  if (text.starts_with("power:")) {
    const std::string arg(text.substr(6));
    std::size_t used = 0;
    double delta = 0.0;
    try {
      delta = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() || !std::isfinite(delta))
      throw ParseError(6, {"number"}, "bad power exponent '" + arg + "'");
    return generators::power(delta);
  }
  throw ParseError(0, {"identity", "log", "reciprocal", "exp", "power:<delta>"},
                   "unknown generator '" + std::string(text) + "'");
}

void validate_generator(const Generator& g) {
  const std::vector<double> grid = make_grid(sample_range(g.domain()), 64);
  double previous = -kInf;
  for (double x : grid) {
    const double y = g(x);
    if (!std::isfinite(y)) fail(ErrorKind::Domain, g.id() + " is not finite at " + std::to_string(x));
    if (!(y > previous))
      fail(ErrorKind::Domain, g.id() + " is not strictly increasing near " + std::to_string(x));
    previous = y;
    const double back = g.inverse(y);
    if (std::abs(back - x) > 1e-10 * std::max(1.0, std::abs(x)))
      fail(ErrorKind::Domain, g.id() + " inverse does not round-trip at " + std::to_string(x));
    if (!(g.derivative(x) > 0.0))
      fail(ErrorKind::Domain, g.id() + " derivative is not positive at " + std::to_string(x));
  }
}

}  // namespace cdt
