#include "cdt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cdt/error.hpp"

namespace cdt {

namespace {

struct Mapping {
  // Identity on finite intervals; tangent map when an end is infinite.
  bool tangent = false;
  double center = 0.0;
  double scale = 1.0;

  double to_x(double t) const { return tangent ? center + scale * std::tan(t) : t; }
  double to_t(double x) const { return tangent ? std::atan((x - center) / scale) : x; }
  double jacobian(double t) const {
    if (!tangent) return 1.0;
    const double c = std::cos(t);
    return scale / (c * c);
  }
};

struct Simpson {
  const ScalarFn& g;
  double panel_tol;
  int max_depth;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth || !(m > a && b > m))
      fail(ErrorKind::QuadratureFailure, "adaptive Simpson did not reach tolerance on [" + std::to_string(a) +
                                             ", " + std::to_string(b) + "] within " + std::to_string(max_depth) +
                                             " levels");
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  // Endpoints are one-sided limits so jumps at panel edges stay invisible.
  double panel(double a, double b) const {
    const double fa = g(std::nextafter(a, b));
    const double fb = g(std::nextafter(b, a));
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, panel_tol, 0);
  }
};

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(std::size_t n) {
  if (n == 0) fail(ErrorKind::Param, "Gauss-Legendre rule needs at least one node");
  std::vector<double> x(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p2) /
             static_cast<double>(k);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

double integrate(const ScalarFn& f, const Interval& support, std::span<const double> breakpoints,
                 const QuadratureConfig& config) {
  if (!(support.lo < support.hi)) fail(ErrorKind::Domain, "empty integration range " + support.to_string());
  if (config.panels == 0) fail(ErrorKind::Param, "quadrature needs at least one panel");

  Mapping map;
  if (!support.finite()) {
    map.tangent = true;
    map.scale = config.tail_scale;
    map.center = std::isfinite(support.lo) ? support.lo : (std::isfinite(support.hi) ? support.hi : 0.0);
  }
  const double half_pi = 0.5 * std::numbers::pi;
  const double t_lo = std::isfinite(support.lo) ? map.to_t(support.lo) : -half_pi;
  const double t_hi = std::isfinite(support.hi) ? map.to_t(support.hi) : half_pi;

  std::vector<double> cuts{t_lo};
  for (double b : breakpoints)
    if (support.contains(b)) cuts.push_back(map.to_t(b));
  cuts.push_back(t_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Transformed integrand. The double nearest pi/2 still maps to a finite x,
  // so heavy tails keep their finite endpoint limit.
  const ScalarFn g = [&](double t) {
    const double v = f(map.to_x(t)) * map.jacobian(t);
    return std::isfinite(v) ? v : 0.0;
  };

  std::vector<std::pair<double, double>> panels;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double h = (cuts[s + 1] - cuts[s]) / static_cast<double>(config.panels);
    for (std::size_t k = 0; k < config.panels; ++k) {
      const double a = cuts[s] + h * static_cast<double>(k);
      const double b = k + 1 == config.panels ? cuts[s + 1] : a + h;
      panels.emplace_back(a, b);
    }
  }

  double total = 0.0;
  if (config.rule == QuadratureRule::AdaptiveSimpson) {
    const Simpson simpson{g, config.abs_tol / static_cast<double>(panels.size()), config.max_depth};
    total = reduce_terms(
        panels.size(), [&](std::size_t i) { return simpson.panel(panels[i].first, panels[i].second); },
        config.policy);
  } else {
    const auto [nodes, weights] = gauss_legendre_rule(config.nodes);
    total = reduce_terms(
        panels.size(),
        [&](std::size_t i) {
          const double a = panels[i].first;
          const double b = panels[i].second;
          const double half = 0.5 * (b - a);
          const double mid = 0.5 * (a + b);
          double acc = 0.0;
          for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * g(mid + half * nodes[k]);
          return half * acc;
        },
        config.policy);
  }
  if (!std::isfinite(total)) fail(ErrorKind::QuadratureFailure, "integral is not finite");
  return total;
}

}  // namespace cdt
