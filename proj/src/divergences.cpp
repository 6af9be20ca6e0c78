#include "cdt/divergences.hpp"

#include <algorithm>
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

// Negative residues within `rel` of the operand magnitude are rounding noise.
DivergenceValue finish(double value, double scale, double rel, double p, double q) {
  DivergenceValue out{value, false, {p, q}};
  if (std::isnan(value)) fail(ErrorKind::Domain, "divergence at (" + num(p) + ", " + num(q) + ") is NaN");
  if (value < 0.0) {
    if (value < -rel * std::max(1.0, scale))
      fail(ErrorKind::Convexity, "negative divergence " + num(value) + " at (" + num(p) + ", " + num(q) +
                                     "): generator is not convex there");
    out.value = 0.0;
    out.clamped = true;
  }
  return out;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Weight, "alpha = " + num(alpha) + " is outside (0, 1)");
}

void require_in(const Interval& dom, double x, const std::string& what) {
  if (!dom.contains(x)) fail(ErrorKind::Domain, what + " " + num(x) + " outside " + dom.to_string());
}

Interval intersect(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// Weighted Jensen gap with weights (w_p, w_q) on (p, q).
std::pair<double, double> jensen_terms(const JensenSpec& spec, double p, double q, double w_p, double w_q) {
  const FunctionModel& f = spec.f();
  require_in(f.domain(), p, "point");
  require_in(f.domain(), q, "point");
  const double outer = barycenter(spec.n(), f(p), f(q), w_p, w_q);
  const double inner = f(barycenter(spec.m(), p, q, w_p, w_q));
  return {outer, inner};
}

DivergenceValue jensen_value(const JensenSpec& spec, double p, double q, double w_p, double w_q) {
  const auto [outer, inner] = jensen_terms(spec, p, q, w_p, w_q);
  return finish(outer - inner, std::abs(outer) + std::abs(inner), 1e-12, p, q);
}

bool analytic(const QabdSpec& spec) {
  return spec.f().has_analytic_derivative() && spec.rho().has_analytic_derivative() &&
         spec.tau().has_analytic_derivative();
}

void warn_affine(ConvexityKind verdict, const std::string& what, std::vector<std::string>& warnings) {
  if (verdict == ConvexityKind::Affine)
    warnings.push_back(what + " is affine after reduction; the divergence is identically zero");
}

}  // namespace

JensenSpec::JensenSpec(FunctionModel f, MeanSpec m, MeanSpec n, ConvexityKind verdict)
    : f_(std::move(f)), m_(std::move(m)), n_(std::move(n)), verdict_(verdict) {
  warn_affine(verdict_, f_.id() + " under (" + m_.to_string() + ", " + n_.to_string() + ")", warnings_);
}

JensenSpec JensenSpec::create(FunctionModel f, MeanSpec m, MeanSpec n, const ConvexityOptions& options) {
  const auto gm = quasi_arithmetic_generator(m);
  const auto gn = quasi_arithmetic_generator(n);
  ConvexityKind verdict = ConvexityKind::Convex;
  if (gm && gn) {
    const ConvexityVerdict v = is_mn_convex(f, *gm, *gn, options);
    if (v.kind == ConvexityKind::NotConvex)
      fail(ErrorKind::Convexity, f.id() + " is not (" + m.to_string() + ", " + n.to_string() +
                                     ")-convex: witness (" + num((*v.witness)[0]) + ", " + num((*v.witness)[1]) +
                                     ", " + num((*v.witness)[2]) + ")");
    verdict = v.kind;
  } else {
    const Generator probe = m.domain().lo >= 0.0 ? generators::log() : generators::identity();
    const Interval range = options.range ? *options.range : default_check_range(f, probe);
    const MidpointCertificate cert = certify_mn_convex(f, m, n, range);
    if (!cert.holds)
      fail(ErrorKind::Convexity, f.id() + " fails the (" + m.to_string() + ", " + n.to_string() +
                                     ") midpoint inequality at (" + num((*cert.witness)[0]) + ", " +
                                     num((*cert.witness)[1]) + ")");
  }
  return JensenSpec(std::move(f), std::move(m), std::move(n), verdict);
}

JensenSpec JensenSpec::trusted(FunctionModel f, MeanSpec m, MeanSpec n, ConvexityKind verdict) {
  return JensenSpec(std::move(f), std::move(m), std::move(n), verdict);
}

QabdSpec::QabdSpec(FunctionModel f, Generator rho, Generator tau, FunctionModel g, ConvexityKind verdict)
    : f_(std::move(f)), rho_(std::move(rho)), tau_(std::move(tau)), g_(std::move(g)), verdict_(verdict) {
  warn_affine(verdict_, to_string(), warnings_);
}

QabdSpec QabdSpec::create(FunctionModel f, Generator rho, Generator tau, const ConvexityOptions& options) {
  const ConvexityVerdict v = is_mn_convex(f, rho, tau, options);
  if (v.kind == ConvexityKind::NotConvex)
    fail(ErrorKind::Convexity, f.id() + " is not (" + rho.id() + ", " + tau.id() + ")-convex: witness (" +
                                   num((*v.witness)[0]) + ", " + num((*v.witness)[1]) + ", " +
                                   num((*v.witness)[2]) + ")");
  FunctionModel g = to_ordinary(f, rho, tau);
  return QabdSpec(std::move(f), std::move(rho), std::move(tau), std::move(g), v.kind);
}

QabdSpec QabdSpec::trusted(FunctionModel f, Generator rho, Generator tau, ConvexityKind verdict) {
  FunctionModel g = to_ordinary(f, rho, tau);
  return QabdSpec(std::move(f), std::move(rho), std::move(tau), std::move(g), verdict);
}

Interval QabdSpec::domain() const { return intersect(f_.domain(), rho_.domain()); }

std::string QabdSpec::to_string() const { return "qabd(" + f_.id() + "; " + rho_.id() + ", " + tau_.id() + ")"; }

DivergenceValue jccd(const JensenSpec& spec, double p, double q) { return jensen_value(spec, p, q, 0.5, 0.5); }

DivergenceValue jccd(const FunctionModel& f, const MeanSpec& m, const MeanSpec& n, double p, double q) {
  return jccd(JensenSpec::create(f, m, n), p, q);
}

DivergenceValue skew_jccd(const JensenSpec& spec, double alpha, double p, double q) {
  require_alpha(alpha);
  return jensen_value(spec, p, q, 1.0 - alpha, alpha);
}

DivergenceValue skew_jccd(const FunctionModel& f, const MeanSpec& m, const MeanSpec& n, double alpha, double p,
                          double q) {
  return skew_jccd(JensenSpec::create(f, m, n), alpha, p, q);
}

double extended_skew_jensen(const FunctionModel& f, double alpha, double p, double q) {
  if (alpha == 0.0 || alpha == 1.0 || !std::isfinite(alpha))
    fail(ErrorKind::Weight, "extended skew Jensen needs a finite alpha outside {0, 1}");
  require_in(f.domain(), p, "point");
  require_in(f.domain(), q, "point");
  const double x = (1.0 - alpha) * p + alpha * q;
  require_in(f.domain(), x, "extrapolated point");
  const double sign = alpha * (1.0 - alpha) > 0.0 ? 1.0 : -1.0;
  return sign * (((1.0 - alpha) * f(p) + alpha * f(q)) - f(x));
}

double jensen_diversity(const JensenSpec& spec, const WeightedSet& points) {
  const FunctionModel& f = spec.f();
  std::vector<double> images(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_in(f.domain(), points.points()[i], "point");
    images[i] = f(points.points()[i]);
  }
  const double outer = weighted_mean(spec.n(), images, points.weights());
  const double inner = f(weighted_mean(spec.m(), points.points(), points.weights()));
  return finish(outer - inner, std::abs(outer) + std::abs(inner), 1e-12, points.points().front(),
                points.points().back())
      .value;
}

double kappa(const Generator& gamma, double x, double y) {
  require_in(gamma.domain(), x, "kappa argument");
  require_in(gamma.domain(), y, "kappa argument");
  const double d = gamma.derivative(x);
  if (!(d > 1e-300)) fail(ErrorKind::Derivative, gamma.id() + "' vanishes at " + num(x));
  return (gamma(y) - gamma(x)) / d;
}

DivergenceValue qabd(const QabdSpec& spec, double p, double q) {
  const Interval dom = spec.domain();
  require_in(dom, p, "point");
  require_in(dom, q, "point");
  const FunctionModel& f = spec.f();
  const Generator& rho = spec.rho();
  const Generator& tau = spec.tau();
  const double fp = f(p);
  const double fq = f(q);
  require_in(tau.domain(), fp, "F value");
  require_in(tau.domain(), fq, "F value");
  const double tau_prime = tau.derivative(fq);
  const double rho_prime = rho.derivative(q);
  if (!(tau_prime > 1e-300)) fail(ErrorKind::Derivative, tau.id() + "'(F(q)) underflows at q = " + num(q));
  if (!(rho_prime > 1e-300)) fail(ErrorKind::Derivative, rho.id() + "'(q) underflows at q = " + num(q));
  if (p == q) return DivergenceValue{0.0, false, {p, q}};
  const double tp = tau(fp);
  const double tq = tau(fq);
  const double rp = rho(p);
  const double rq = rho(q);
  const double fprime = f.derivative(q);
  const double first = (tp - tq) / tau_prime;
  const double second = (rp - rq) / rho_prime * fprime;
  const double scale = (std::abs(tp) + std::abs(tq)) / tau_prime + (std::abs(rp) + std::abs(rq)) / rho_prime * std::abs(fprime);
  return finish(first - second, scale, analytic(spec) ? 1e-12 : 1e-8, p, q);
}

ConformalParts qabd_conformal(const QabdSpec& spec, double p, double q) {
  const Interval dom = spec.domain();
  require_in(dom, p, "point");
  require_in(dom, q, "point");
  const double tau_prime = spec.tau().derivative(spec.f()(q));
  if (!(tau_prime > 1e-300)) fail(ErrorKind::Derivative, spec.tau().id() + "'(F(q)) underflows at q = " + num(q));
  const FunctionModel& g = spec.ordinary();
  const double u = spec.rho()(p);
  const double v = spec.rho()(q);
  const double base = p == q ? 0.0 : g(u) - g(v) - (u - v) * g.derivative(v);
  return {1.0 / tau_prime, base};
}

std::vector<double> bccd_numeric(const JensenSpec& spec, double p, double q, std::span<const double> steps) {
  std::vector<double> out;
  out.reserve(steps.size());
  for (double a : steps) {
    if (!(a > 0.0 && a < 1.0)) fail(ErrorKind::Weight, "BCCD step " + num(a) + " is outside (0, 1)");
    // alpha = 1 - a: weight a on p, 1 - a on q.
    const double j = jensen_value(spec, p, q, a, 1.0 - a).value;
    out.push_back(j / (a * (1.0 - a)));
  }
  return out;
}

double omega_divergence(const JensenSpec& spec, double omega, double p, double q) {
  if (!(omega > -1.0 && omega < 1.0)) fail(ErrorKind::Weight, "omega = " + num(omega) + " is outside (-1, 1)");
  const double alpha = 0.5 * (1.0 + omega);
  return skew_jccd(spec, alpha, p, q).value / (1.0 - omega * omega);
}

double chi(double delta, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) fail(ErrorKind::Domain, "chi needs positive arguments");
  // Grouped so that delta = 0 reduces to q - p without rounding.
  const double top = (std::pow(q, 1.0 + delta) - std::pow(p, 1.0 + delta)) - (std::pow(q, delta) - std::pow(p, delta));
  return top / std::pow(p, delta);
}

double lehmer_bregman(const FunctionModel& f, double delta, double delta_prime, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) fail(ErrorKind::Domain, "Lehmer Bregman divergence needs p, q > 0");
  require_in(f.domain(), p, "point");
  require_in(f.domain(), q, "point");
  const double fp = f(p);
  const double fq = f(q);
  if (!(fp > 0.0) || !(fq > 0.0)) fail(ErrorKind::Domain, "Lehmer Bregman divergence needs F(p), F(q) > 0");
  if (p == q) return 0.0;
  const MidpointCertificate cert = certify_mn_convex(f, MeanSpec::lehmer(delta), MeanSpec::lehmer(delta_prime),
                                                     {std::min(p, q), std::max(p, q)}, 1000);
  if (!cert.holds)
    fail(ErrorKind::Convexity, f.id() + " is not (L_" + num(delta) + ", L_" + num(delta_prime) +
                                   ")-convex on the segment: witness (" + num((*cert.witness)[0]) + ", " +
                                   num((*cert.witness)[1]) + ")");
  return chi(delta_prime, fp, fq) - chi(delta, p, q) * f.derivative(p);
}

double jensen_bregman(const QabdSpec& spec, double p, double q) {
  const MeanSpec m = MeanSpec::quasi_arithmetic(spec.rho());
  const double mid = mean(m, p, q);
  return 0.5 * (qabd(spec, p, mid).value + qabd(spec, q, mid).value);
}

double separable_divergence(std::span<const QabdSpec> specs, std::span<const double> p, std::span<const double> q) {
  if (specs.size() != p.size() || specs.size() != q.size())
    fail(ErrorKind::LengthMismatch, "separable divergence needs equal lengths, got " + std::to_string(specs.size()) +
                                        ", " + std::to_string(p.size()) + ", " + std::to_string(q.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      total += qabd(specs[i], p[i], q[i]).value;
    } catch (const Error& e) {
      throw Error(e.kind(), "component " + std::to_string(i) + ": " + e.what());
    }
  }
  return total;
}

}  // namespace cdt
