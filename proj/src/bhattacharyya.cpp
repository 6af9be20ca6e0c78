#include "cdt/bhattacharyya.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cdt/convexity.hpp"
#include "cdt/error.hpp"

namespace cdt {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Weight, "alpha = " + num(alpha) + " is outside (0, 1)");
}

// Sum over masses or integral over the common support of term(p(x), q(x)).
double pointwise_total(const Distribution& p, const Distribution& q, const std::function<double(double, double)>& term,
                       ExecutionPolicy policy) {
  if (p.index() != q.index()) fail(ErrorKind::KindMismatch, "cannot compare a discrete and a continuous distribution");
  if (const auto* dp = std::get_if<DiscreteDist>(&p)) {
    const auto& dq = std::get<DiscreteDist>(q);
    if (dp->size() != dq.size())
      fail(ErrorKind::KindMismatch, "distributions have " + std::to_string(dp->size()) + " and " +
                                        std::to_string(dq.size()) + " masses");
    const auto& a = dp->masses();
    const auto& b = dq.masses();
    return reduce_terms(a.size(), [&](std::size_t i) { return term(a[i], b[i]); }, policy);
  }
  const auto& dp2 = std::get<DensityModel>(p);
  const auto& dq2 = std::get<DensityModel>(q);
  if (!(dp2.support() == dq2.support()))
    fail(ErrorKind::KindMismatch, "densities have supports " + dp2.support().to_string() + " and " +
                                      dq2.support().to_string());
  std::vector<double> cuts = dp2.breakpoints();
  cuts.insert(cuts.end(), dq2.breakpoints().begin(), dq2.breakpoints().end());
  QuadratureConfig config = dp2.quadrature();
  config.policy = policy;
  return integrate([&](double x) { return term(dp2(x), dq2(x)); }, dp2.support(), cuts, config);
}

}  // namespace

double bhat_coefficient(const MeanSpec& m, double alpha, const Distribution& p, const Distribution& q,
                        ExecutionPolicy policy) {
  require_alpha(alpha);
  if (!m.supports_weights() && alpha != 0.5)
    fail(ErrorKind::UnsupportedWeights, m.to_string() + " has no barycentric form");
  return pointwise_total(
      p, q,
      [&](double a, double b) {
        if (a == b) return a;
        return barycenter(m, a, b, 1.0 - alpha, alpha);
      },
      policy);
}

bool known_dominated(const MeanSpec& m, const MeanSpec& n) {
  const auto dm = m.power_index();
  const auto dn = n.power_index();
  return dm && dn && *dm <= *dn;
}

DivergenceValue cmbd(const MeanSpec& m, const MeanSpec& n, double alpha, const Distribution& p, const Distribution& q,
                     const CmbdOptions& options) {
  require_alpha(alpha);
  if (!options.trusted_dominance && !known_dominated(m, n)) {
    const DominanceResult r = dominates(m, n, Interval::positive_reals(), options.dominance);
    if (r.a_above_b)
      fail(ErrorKind::Dominance, m.to_string() + " exceeds " + n.to_string() + " at (" + num(r.a_above_b->x) + ", " +
                                     num(r.a_above_b->y) + ", alpha = " + num(r.a_above_b->alpha) + ")");
  }
  const double cm = bhat_coefficient(m, alpha, p, q, options.policy);
  const double cn = bhat_coefficient(n, alpha, p, q, options.policy);
  if (!(cm > 0.0) || !(cn > 0.0)) fail(ErrorKind::Domain, "Bhattacharyya coefficient is not positive");
  DivergenceValue out{-std::log(cm / cn), false, {0.0, 0.0}};
  if (out.value < 0.0) {
    if (out.value < -1e-12) fail(ErrorKind::Dominance, "c^M exceeds c^N by " + num(-out.value) + " in log scale");
    out.value = 0.0;
    out.clamped = true;
  }
  return out;
}

double power_cmbd(double delta1, double delta2, double alpha, const Distribution& p, const Distribution& q,
                  ExecutionPolicy policy) {
  if (delta1 == 0.0 || delta2 == 0.0) fail(ErrorKind::Param, "power exponents must be nonzero (use cmbd for G)");
  if (delta1 == delta2) fail(ErrorKind::Param, "power exponents must differ");
  const double c1 = bhat_coefficient(MeanSpec::power(delta1), alpha, p, q, policy);
  const double c2 = bhat_coefficient(MeanSpec::power(delta2), alpha, p, q, policy);
  const double value = std::log(c1 / c2) / (delta1 - delta2);
  return value < 0.0 && value > -1e-12 ? 0.0 : value;
}

double alpha_divergence(double alpha, const Distribution& p, const Distribution& q, ExecutionPolicy policy) {
  require_alpha(alpha);
  // Exponent alpha on p means barycentric weight 1 - alpha on q.
  const double c = bhat_coefficient(MeanSpec::geometric(), 1.0 - alpha, p, q, policy);
  const double value = (1.0 - c) / (alpha * (1.0 - alpha));
  return value < 0.0 && value > -1e-12 ? 0.0 : value;
}

double cauchy_ha_closed_form(double s1, double s2, double alpha) {
  if (!(s1 > 0.0) || !(s2 > 0.0) || !std::isfinite(s1) || !std::isfinite(s2))
    fail(ErrorKind::Param, "Cauchy scales must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Param, "alpha = " + num(alpha) + " is outside (0, 1)");
  const double a = (1.0 - alpha) / s1 + alpha / s2;
  const double b = (1.0 - alpha) * s1 + alpha * s2;
  return 0.5 * std::log(a * b);
}

double mean_gap_distance(const Generator& f, const Generator& g, const Distribution& p, const Distribution& q,
                         ExecutionPolicy policy) {
  const Interval common{std::max(f.domain().lo, g.domain().lo), std::min(f.domain().hi, g.domain().hi)};
  const FunctionModel id("identity", common, [](double x) { return x; }, [](double) { return 1.0; });
  ConvexityOptions options;
  options.policy = policy;
  const ConvexityVerdict v = is_mn_convex(id, f, g, options);
  if (v.kind == ConvexityKind::NotConvex)
    fail(ErrorKind::Dominance, "M_" + f.id() + " <= M_" + g.id() + " fails: " + g.id() + " o " + f.id() +
                                   "^-1 is not convex");
  const MeanSpec mf = MeanSpec::quasi_arithmetic(f);
  const MeanSpec mg = MeanSpec::quasi_arithmetic(g);
  const double value = pointwise_total(
      p, q,
      [&](double a, double b) {
        if (a == b) return 0.0;
        return mean(mg, a, b) - mean(mf, a, b);
      },
      policy);
  return value < 0.0 && value > -1e-12 ? 0.0 : value;
}

}  // namespace cdt
