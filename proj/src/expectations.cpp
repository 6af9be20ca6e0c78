#include "cdt/expectations.hpp"

#include <cmath>
#include <cstdio>

#include "cdt/error.hpp"

namespace cdt {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double image(const Generator& f, double x) {
  if (!f.domain().contains(x)) fail(ErrorKind::Domain, num(x) + " outside the domain " + f.domain().to_string() + " of " + f.id());
  return f(x);
}

double invert(const Generator& f, double y) {
  const double x = f.inverse(y);
  if (std::isnan(x)) fail(ErrorKind::Domain, "expected value " + num(y) + " outside the image of " + f.id());
  return x;
}

}  // namespace

double qa_mean(const Generator& f, std::span<const double> samples, ExecutionPolicy policy) {
  if (samples.empty()) fail(ErrorKind::LengthMismatch, "quasi-arithmetic mean of no samples");
  const double n = static_cast<double>(samples.size());
  const double total = reduce_terms(samples.size(), [&](std::size_t i) { return image(f, samples[i]); }, policy);
  return invert(f, total / n);
}

double qa_expected_value(const Generator& f, const Distribution& dist, bool normalize, ExecutionPolicy policy) {
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    if (!d->values()) fail(ErrorKind::Param, "discrete distribution needs support values for an expectation");
    const auto& xs = *d->values();
    const auto& ms = d->masses();
    const double total =
        reduce_terms(xs.size(), [&](std::size_t i) { return ms[i] == 0.0 ? 0.0 : ms[i] * image(f, xs[i]); }, policy);
    double mass = 1.0;
    if (normalize || !d->normalized()) mass = reduce_terms(ms.size(), [&](std::size_t i) { return ms[i]; }, policy);
    return invert(f, total / mass);
  }
  const auto& density = std::get<DensityModel>(dist);
  QuadratureConfig config = density.quadrature();
  config.policy = policy;
  const double total = integrate(
      [&](double x) {
        const double p = density(x);
        return p == 0.0 ? 0.0 : p * image(f, x);
      },
      density.support(), density.breakpoints(), config);
  double mass = 1.0;
  if (normalize) mass = integrate([&](double x) { return density(x); }, density.support(), density.breakpoints(), config);
  return invert(f, total / mass);
}

}  // namespace cdt
