#include "cdt/means.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "cdt/error.hpp"

namespace cdt {

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool near_equal(double p, double q) { return std::abs(p - q) < 1e-9 * std::max(1.0, std::abs(p)); }

double clamp_inner(double value, double lo, double hi) {
  if (std::isnan(value)) return value;
  return std::clamp(value, lo, hi);
}

// Values of a positive-domain family may sit on the closed boundary 0 so that
// probability masses with zeros can be averaged; the result is the limit.
void check_values(const MeanSpec& spec, std::span<const double> values) {
  const Interval dom = spec.domain();
  for (double v : values) {
    const bool boundary_zero = (v == 0.0 && dom.lo == 0.0);
    if (!(dom.contains(v) || boundary_zero))
      fail(ErrorKind::Domain, "value " + format_number(v) + " outside " + dom.to_string() +
                                  " of mean " + spec.to_string());
  }
}

void check_weights(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) fail(ErrorKind::LengthMismatch, "mean of an empty sequence");
  if (values.size() != weights.size())
    fail(ErrorKind::LengthMismatch, "values and weights differ in length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) fail(ErrorKind::Weight, "weight " + format_number(w) + " is not positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorKind::Weight, "weights sum to " + format_number(total) + ", expected 1");
}

double quasi_arithmetic_mean(const Generator& f, std::span<const double> x, std::span<const double> w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(x[i]);
  return f.inverse(acc);
}

double geometric_mean(std::span<const double> x, std::span<const double> w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) return 0.0;
    acc += w[i] * std::log(x[i]);
  }
  return std::exp(acc);
}

double power_mean(double delta, std::span<const double> x, std::span<const double> w) {
  if (std::abs(delta) < 1e-7) return geometric_mean(x, w);
  const double m = *std::max_element(x.begin(), x.end());
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i] / m, delta);
  return m * std::pow(acc, 1.0 / delta);
}

double lehmer_mean(double delta, std::span<const double> x, std::span<const double> w) {
  const double m = *std::max_element(x.begin(), x.end());
  if (m == 0.0) return 0.0;
  const bool has_zero = std::find(x.begin(), x.end(), 0.0) != x.end();
  if (has_zero && delta < 0.0) return 0.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] / m;
    const double rd = std::pow(r, delta);
    den += w[i] * rd;
    num += w[i] * rd * r;
  }
  return m * num / den;
}

double gini_mean(double d1, double d2, std::span<const double> x, std::span<const double> w) {
  const double m = *std::max_element(x.begin(), x.end());
  if (m == 0.0) return 0.0;
  const bool has_zero = std::find(x.begin(), x.end(), 0.0) != x.end();
  if (d1 == d2) {
    if (has_zero && d1 <= 0.0) return 0.0;
    // (prod x_i^{w_i x_i^d})^{1 / sum w_i x_i^d}, scaled by the maximum.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) continue;
      const double r = x[i] / m;
      const double wr = w[i] * std::pow(r, d1);
      num += wr * std::log(r);
      den += wr;
    }
    return m * std::exp(num / den);
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] / m;
    num += w[i] * std::pow(r, d1);
    den += w[i] * std::pow(r, d2);
  }
  const double value = m * std::pow(num / den, 1.0 / (d1 - d2));
  if (std::isnan(value) && has_zero) return 0.0;
  return value;
}

// Root of h on [a, b] given that h changes sign (or is flat) there.
double bisect(const ScalarFn& h, double a, double b) {
  double ha = h(a);
  double hb = h(b);
  if (ha == 0.0) return a;
  if (hb == 0.0) return b;
  if ((ha > 0.0) == (hb > 0.0)) return std::abs(ha) < std::abs(hb) ? a : b;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double hm = h(mid);
    if (hm == 0.0) return mid;
    if ((hm > 0.0) == (ha > 0.0)) {
      a = mid;
      ha = hm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

bool strictly_monotone_on(const ScalarFn& h, double a, double b) {
  const std::vector<double> grid = uniform_grid(a, b, 64);
  int direction = 0;
  double previous = h(grid[0]);
  if (!std::isfinite(previous)) return false;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = h(grid[i]);
    if (!std::isfinite(v) || v == previous) return false;
    const int d = v > previous ? 1 : -1;
    if (direction != 0 && d != direction) return false;
    direction = d;
    previous = v;
  }
  return true;
}

void require_in(const Interval& dom, double v, const std::string& what) {
  if (!dom.contains(v))
    fail(ErrorKind::Domain, what + ": value " + format_number(v) + " outside " + dom.to_string());
}

}  // namespace

MeanSpec::MeanSpec(MeanFamily family, std::vector<double> params, std::vector<Generator> gens,
                   std::shared_ptr<const MeanSpec> inner)
    : family_(family), params_(std::move(params)), generators_(std::move(gens)), inner_(std::move(inner)) {}

MeanSpec MeanSpec::quasi_arithmetic(Generator f) {
  return MeanSpec(MeanFamily::QuasiArithmetic, {}, {std::move(f)}, nullptr);
}

MeanSpec MeanSpec::power(double delta) {
  if (!std::isfinite(delta)) fail(ErrorKind::Param, "power mean exponent must be finite");
  return MeanSpec(MeanFamily::Power, {delta}, {}, nullptr);
}

MeanSpec MeanSpec::lehmer(double delta) {
  if (!std::isfinite(delta)) fail(ErrorKind::Param, "Lehmer exponent must be finite");
  return MeanSpec(MeanFamily::Lehmer, {delta}, {}, nullptr);
}

MeanSpec MeanSpec::gini(double delta1, double delta2) {
  if (!std::isfinite(delta1) || !std::isfinite(delta2))
    fail(ErrorKind::Param, "Gini exponents must be finite");
  return MeanSpec(MeanFamily::Gini, {delta1, delta2}, {}, nullptr);
}

MeanSpec MeanSpec::lagrange(Generator f) {
  return MeanSpec(MeanFamily::Lagrange, {}, {std::move(f)}, nullptr);
}

MeanSpec MeanSpec::cauchy(Generator f, Generator g) {
  return MeanSpec(MeanFamily::Cauchy, {}, {std::move(f), std::move(g)}, nullptr);
}

MeanSpec MeanSpec::stolarsky(double p) {
  if (!std::isfinite(p)) fail(ErrorKind::Param, "Stolarsky parameter must be finite");
  return MeanSpec(MeanFamily::Stolarsky, {p}, {}, nullptr);
}

MeanSpec MeanSpec::dual(MeanSpec inner) {
  if (!inner.symmetric() || !inner.homogeneous())
    fail(ErrorKind::Domain, "dual mean needs a symmetric homogeneous mean, got " + inner.to_string());
  return MeanSpec(MeanFamily::Dual, {}, {}, std::make_shared<const MeanSpec>(std::move(inner)));
}

bool MeanSpec::homogeneous() const noexcept {
  switch (family_) {
    case MeanFamily::Power:
    case MeanFamily::Lehmer:
    case MeanFamily::Gini:
    case MeanFamily::Stolarsky:
      return true;
    case MeanFamily::QuasiArithmetic:
      return generators_[0].power_exponent().has_value();
    case MeanFamily::Lagrange: {
      const auto e = generators_[0].power_exponent();
      return e.has_value() && *e != 1.0;
    }
    case MeanFamily::Cauchy:
      return generators_[0].power_exponent().has_value() && generators_[1].power_exponent().has_value();
    case MeanFamily::Dual:
      return inner_->homogeneous();
  }
  return false;
}

bool MeanSpec::supports_weights() const noexcept {
  return family_ == MeanFamily::QuasiArithmetic || family_ == MeanFamily::Power ||
         family_ == MeanFamily::Lehmer || family_ == MeanFamily::Gini;
}

const MeanSpec& MeanSpec::inner() const {
  if (!inner_) fail(ErrorKind::Param, to_string() + " has no inner mean");
  return *inner_;
}

Interval MeanSpec::domain() const {
  switch (family_) {
    case MeanFamily::QuasiArithmetic:
    case MeanFamily::Lagrange:
      return generators_[0].domain();
    case MeanFamily::Cauchy: {
      const Interval a = generators_[0].domain();
      const Interval b = generators_[1].domain();
      return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    default:
      return Interval::positive_reals();
  }
}

std::optional<double> MeanSpec::power_index() const {
  switch (family_) {
    case MeanFamily::QuasiArithmetic:
      return generators_[0].power_exponent();
    case MeanFamily::Power:
      return params_[0];
    case MeanFamily::Lehmer:
      if (params_[0] == 0.0) return 1.0;
      if (params_[0] == -1.0) return -1.0;
      if (params_[0] == -0.5) return 0.0;
      return std::nullopt;
    case MeanFamily::Gini:
      if (params_[1] == 0.0) return params_[0];
      if (params_[0] == 0.0) return params_[1];
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::string MeanSpec::to_string() const {
  switch (family_) {
    case MeanFamily::QuasiArithmetic: return "qa:" + generators_[0].id();
    case MeanFamily::Power: return "power:" + format_number(params_[0]);
    case MeanFamily::Lehmer: return "lehmer:" + format_number(params_[0]);
    case MeanFamily::Gini: return "gini:" + format_number(params_[0]) + ":" + format_number(params_[1]);
    case MeanFamily::Lagrange: return "lagrange:" + generators_[0].id();
    case MeanFamily::Cauchy: return "cauchy:" + generators_[0].id() + ":" + generators_[1].id();
    case MeanFamily::Stolarsky: return "stolarsky:" + format_number(params_[0]);
    case MeanFamily::Dual: return "dual:" + inner_->to_string();
  }
  return "?";
}

namespace {

struct SpecParser {
  std::string_view text;
  std::vector<std::pair<std::string_view, std::size_t>> tokens;
  std::size_t pos = 0;

  explicit SpecParser(std::string_view t) : text(t) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.size(); ++i) {
      if (i == t.size() || t[i] == ':') {
        tokens.emplace_back(t.substr(start, i - start), start);
        start = i + 1;
      }
    }
  }

  std::size_t offset() const { return pos < tokens.size() ? tokens[pos].second : text.size(); }

  std::string_view take(const std::vector<std::string>& expected) {
    if (pos >= tokens.size() || tokens[pos].first.empty())
      throw ParseError(offset(), expected, "unexpected end of mean spec '" + std::string(text) + "'");
    return tokens[pos++].first;
  }

  double number() {
    const std::size_t at = offset();
    const std::string tok(take({"number"}));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(v))
      throw ParseError(at, {"number"}, "bad number '" + tok + "' in mean spec");
    return v;
  }

  Generator generator() {
    const std::size_t at = offset();
    const std::string_view name = take({"identity", "log", "reciprocal", "exp", "power"});
    if (name == "power") return generators::power(number());
    try {
      return parse_generator(name);
    } catch (const ParseError& e) {
      throw ParseError(at, e.expected(), "unknown generator '" + std::string(name) + "'");
    }
  }

  MeanSpec spec() {
    const std::size_t at = offset();
    const std::vector<std::string> families{"qa", "power", "lehmer", "gini", "lagrange",
                                            "cauchy", "stolarsky", "dual", "A", "G", "H"};
    const std::string_view head = take(families);
    if (head == "A") return MeanSpec::arithmetic();
    if (head == "G") return MeanSpec::geometric();
    if (head == "H") return MeanSpec::harmonic();
    if (head == "qa") return MeanSpec::quasi_arithmetic(generator());
    if (head == "power") return MeanSpec::power(number());
    if (head == "lehmer") return MeanSpec::lehmer(number());
    if (head == "gini") {
      const double d1 = number();
      return MeanSpec::gini(d1, number());
    }
    if (head == "lagrange") return MeanSpec::lagrange(generator());
    if (head == "cauchy") {
      Generator f = generator();
      return MeanSpec::cauchy(std::move(f), generator());
    }
    if (head == "stolarsky") return MeanSpec::stolarsky(number());
    if (head == "dual") return MeanSpec::dual(spec());
    throw ParseError(at, families, "unknown mean family '" + std::string(head) + "'");
  }
};

}  // namespace

MeanSpec parse_mean_spec(std::string_view text) {
  SpecParser parser(text);
  MeanSpec out = parser.spec();
  if (parser.pos != parser.tokens.size())
    throw ParseError(parser.offset(), {"end of spec"}, "trailing tokens in mean spec '" + std::string(text) + "'");
  return out;
}

double weighted_mean(const MeanSpec& spec, std::span<const double> values, std::span<const double> weights) {
  if (!spec.supports_weights()) {
    if (values.size() == 2 && weights.size() == 2 && weights[0] == 0.5 && weights[1] == 0.5)
      return mean(spec, values[0], values[1]);
    fail(ErrorKind::UnsupportedWeights, spec.to_string() + " is only defined as an unweighted bivariate mean");
  }
  check_weights(values, weights);
  check_values(spec, values);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double result = 0.0;
  switch (spec.family()) {
    case MeanFamily::QuasiArithmetic:
      result = quasi_arithmetic_mean(spec.generator(), values, weights);
      break;
    case MeanFamily::Power:
      result = power_mean(spec.params()[0], values, weights);
      break;
    case MeanFamily::Lehmer:
      result = lehmer_mean(spec.params()[0], values, weights);
      break;
    case MeanFamily::Gini:
      result = gini_mean(spec.params()[0], spec.params()[1], values, weights);
      break;
    default:
      break;
  }
  if (std::isnan(result) && *lo_it == 0.0) result = 0.0;
  if (std::isnan(result)) fail(ErrorKind::Domain, spec.to_string() + " evaluated to NaN");
  return clamp_inner(result, *lo_it, *hi_it);
}

double mean(const MeanSpec& spec, double x, double y) {
  switch (spec.family()) {
    case MeanFamily::Lagrange:
      return lagrange_mean(spec.generator(), x, y);
    case MeanFamily::Cauchy:
      return cauchy_mean(spec.generator(0), spec.generator(1), x, y);
    case MeanFamily::Stolarsky:
      return stolarsky_mean(spec.params()[0], x, y);
    case MeanFamily::Dual:
      return dual_mean(spec.inner(), x, y);
    default: {
      const double v[2] = {x, y};
      const double w[2] = {0.5, 0.5};
      return weighted_mean(spec, v, w);
    }
  }
}

double barycenter(const MeanSpec& spec, double p, double q, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    fail(ErrorKind::Weight, "barycentric weight " + format_number(alpha) + " outside [0, 1]");
  return barycenter(spec, p, q, 1.0 - alpha, alpha);
}

double barycenter(const MeanSpec& spec, double p, double q, double w_p, double w_q) {
  if (!(w_p >= 0.0 && w_q >= 0.0) || std::abs(w_p + w_q - 1.0) > 1e-9)
    fail(ErrorKind::Weight, "barycentric weights must be nonnegative and sum to 1");
  if (w_q == 0.0 || w_p == 0.0) {
    const double v[1] = {w_q == 0.0 ? p : q};
    check_values(spec, v);
    return v[0];
  }
  if (!spec.supports_weights()) {
    if (w_p == 0.5 && w_q == 0.5) return mean(spec, p, q);
    fail(ErrorKind::UnsupportedWeights, spec.to_string() + " has no barycentric form");
  }
  const double v[2] = {p, q};
  const double w[2] = {w_p, w_q};
  check_values(spec, v);
  const double lo = std::min(p, q);
  const double hi = std::max(p, q);
  double result = 0.0;
  switch (spec.family()) {
    case MeanFamily::QuasiArithmetic: {
      // tau(p) + w_q (tau(q) - tau(p)) keeps full precision for tiny w_q.
      const Generator& f = spec.generator();
      const double fp = f(p);
      const double fq = f(q);
      result = w_q <= w_p ? f.inverse(fp + w_q * (fq - fp)) : f.inverse(fq + w_p * (fp - fq));
      break;
    }
    case MeanFamily::Power:
      result = power_mean(spec.params()[0], v, w);
      break;
    case MeanFamily::Lehmer:
      result = lehmer_mean(spec.params()[0], v, w);
      break;
    case MeanFamily::Gini:
      result = gini_mean(spec.params()[0], spec.params()[1], v, w);
      break;
    default:
      break;
  }
  if (std::isnan(result) && lo == 0.0) result = 0.0;
  if (std::isnan(result)) fail(ErrorKind::Domain, spec.to_string() + " evaluated to NaN");
  return clamp_inner(result, lo, hi);
}

std::optional<Generator> quasi_arithmetic_generator(const MeanSpec& spec) {
  if (spec.family() == MeanFamily::QuasiArithmetic) return spec.generator();
  if (spec.family() == MeanFamily::Power) return generators::power(spec.params()[0]);
  return std::nullopt;
}

double lagrange_mean(const Generator& f, double p, double q) {
  require_in(f.domain(), p, "Lagrange mean " + f.id());
  require_in(f.domain(), q, "Lagrange mean " + f.id());
  if (p == q || near_equal(p, q)) return 0.5 * (p + q);
  const double a = std::min(p, q);
  const double b = std::max(p, q);
  const ScalarFn fprime = [&f](double x) { return f.derivative(x); };
  if (!strictly_monotone_on(fprime, a, b))
    fail(ErrorKind::NonInvertibleDerivative, "derivative of " + f.id() + " is not strictly monotone on [" +
                                                 format_number(a) + ", " + format_number(b) + "]");
  const double slope = (f(q) - f(p)) / (q - p);
  return clamp_inner(bisect([&](double x) { return fprime(x) - slope; }, a, b), a, b);
}

double cauchy_mean(const Generator& f, const Generator& g, double p, double q) {
  for (const Generator* gen : {&f, &g}) {
    require_in(gen->domain(), p, "Cauchy mean " + gen->id());
    require_in(gen->domain(), q, "Cauchy mean " + gen->id());
  }
  if (p == q || near_equal(p, q)) return 0.5 * (p + q);
  const double a = std::min(p, q);
  const double b = std::max(p, q);
  const ScalarFn ratio = [&](double x) { return f.derivative(x) / g.derivative(x); };
  if (!strictly_monotone_on(ratio, a, b))
    fail(ErrorKind::NonInvertibleRatio, f.id() + "'/" + g.id() + "' is not strictly monotone on [" +
                                            format_number(a) + ", " + format_number(b) + "]");
  const double target = (f(q) - f(p)) / (g(q) - g(p));
  return clamp_inner(bisect([&](double x) { return ratio(x) - target; }, a, b), a, b);
}

double stolarsky_mean(double p_param, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    fail(ErrorKind::Domain, "Stolarsky mean needs positive arguments");
  if (x == y || near_equal(x, y)) return 0.5 * (x + y);
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  const double log_ratio = std::log(x / y);
  double result = 0.0;
  if (p_param == 0.0) {
    result = (x - y) / log_ratio;  // logarithmic mean
  } else if (std::abs(p_param - 1.0) < 1e-9) {
    result = std::exp((x * std::log(x) - y * std::log(y)) / (x - y) - 1.0);  // identric mean
  } else {
    // (x^p - y^p) / (p (x - y)), with x^p - y^p = y^p expm1(p log(x/y)).
    const double diff = std::pow(y, p_param) * std::expm1(p_param * log_ratio);
    const double ratio = diff / (p_param * (x - y));
    result = std::exp(std::log(ratio) / (p_param - 1.0));
  }
  return clamp_inner(result, lo, hi);
}

double dual_mean(const MeanSpec& spec, double x, double y) {
  if (!spec.symmetric() || !spec.homogeneous())
    fail(ErrorKind::Domain, "dual of " + spec.to_string() + " is undefined (needs symmetric homogeneous)");
  if (!(x > 0.0) || !(y > 0.0)) fail(ErrorKind::Domain, "dual mean needs positive arguments");
  return clamp_inner(x * y / mean(spec, x, y), std::min(x, y), std::max(x, y));
}

std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::Dominates: return "dominates";
    case Dominance::DominatedBy: return "dominated_by";
    case Dominance::Incomparable: return "incomparable";
  }
  return "?";
}

DominanceResult dominates(const MeanSpec& a, const MeanSpec& b, const Interval& domain,
                          const DominanceOptions& options) {
  const Interval range = sample_range(domain);
  const bool weighted = a.supports_weights() && b.supports_weights();
  Sampler sampler(options.seed);
  DominanceResult result{Dominance::Dominates, std::nullopt, std::nullopt, options.samples};
  for (std::size_t i = 0; i < options.samples; ++i) {
    const double x = sampler.uniform(range.lo, range.hi);
    const double y = sampler.uniform(range.lo, range.hi);
    const double alpha = weighted ? sampler.unit() : 0.5;
    const double va = barycenter(a, x, y, alpha);
    const double vb = barycenter(b, x, y, alpha);
    const double slack = options.tolerance * std::max(std::abs(va), std::abs(vb));
    if (va < vb - slack && !result.a_below_b) result.a_below_b = DominanceWitness{x, y, alpha, va, vb};
    if (va > vb + slack && !result.a_above_b) result.a_above_b = DominanceWitness{x, y, alpha, va, vb};
    if (result.a_below_b && result.a_above_b) break;
  }
  if (!result.a_below_b)
    result.verdict = Dominance::Dominates;
  else if (!result.a_above_b)
    result.verdict = Dominance::DominatedBy;
  else
    result.verdict = Dominance::Incomparable;
  return result;
}

}  // namespace cdt
