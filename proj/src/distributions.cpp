#include "cdt/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "cdt/error.hpp"

namespace cdt {

DiscreteDist::DiscreteDist(std::vector<double> masses, std::optional<std::vector<double>> values)
    : DiscreteDist(std::move(masses), std::move(values), true) {}

DiscreteDist::DiscreteDist(std::vector<double> masses, std::optional<std::vector<double>> values, bool check)
    : masses_(std::move(masses)), values_(std::move(values)), normalized_(check) {
  if (masses_.empty()) fail(ErrorKind::LengthMismatch, "distribution has no masses");
  if (values_ && values_->size() != masses_.size())
    fail(ErrorKind::LengthMismatch, "distribution values and masses differ in length");
  double total = 0.0;
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) fail(ErrorKind::Domain, "masses must be finite and nonnegative");
    total += m;
  }
  if (check && std::abs(total - 1.0) > 1e-9)
    fail(ErrorKind::Weight, "masses sum to " + std::to_string(total) + ", expected 1");
  if (!check && !(total > 0.0)) fail(ErrorKind::Weight, "measure has zero total mass");
}

DiscreteDist DiscreteDist::unnormalized(std::vector<double> masses, std::optional<std::vector<double>> values) {
  return DiscreteDist(std::move(masses), std::move(values), false);
}

DensityModel::DensityModel(std::string id, ScalarFn eval, Interval support, std::vector<double> breakpoints,
                           QuadratureConfig config, bool check_normalization)
    : id_(std::move(id)), eval_(std::move(eval)), support_(support), breakpoints_(std::move(breakpoints)),
      config_(config) {
  if (!(support_.lo < support_.hi)) fail(ErrorKind::Domain, "empty density support");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  if (check_normalization) {
    const double mass = integrate(eval_, support_, breakpoints_, config_);
    if (std::abs(mass - 1.0) > config_.abs_tol)
      fail(ErrorKind::Weight, "density " + id_ + " integrates to " + std::to_string(mass));
  }
}

DensityModel DensityModel::cauchy(double scale, QuadratureConfig config) {
  if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorKind::Param, "Cauchy scale must be positive");
  ScalarFn eval = [scale](double x) { return scale / (std::numbers::pi * (x * x + scale * scale)); };
  DensityModel d("cauchy:" + std::to_string(scale), std::move(eval), Interval::real_line(), {0.0}, config, true);
  d.cauchy_scale_ = scale;
  return d;
}

DensityModel DensityModel::grid(std::vector<double> xs, std::vector<double> ps, QuadratureConfig config) {
  if (xs.size() != ps.size() + 1 || ps.empty())
    fail(ErrorKind::LengthMismatch, "grid density needs |xs| = |ps| + 1");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1])) fail(ErrorKind::Order, "grid edges must be strictly increasing");
  for (double p : ps)
    if (!(p >= 0.0)) fail(ErrorKind::Domain, "grid masses must be nonnegative");
  std::vector<double> heights(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) heights[i] = ps[i] / (xs[i + 1] - xs[i]);
  ScalarFn eval = [xs, heights](double x) {
    if (x < xs.front() || x >= xs.back()) return 0.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    return heights[static_cast<std::size_t>(it - xs.begin()) - 1];
  };
  const Interval support{xs.front(), xs.back()};
  return DensityModel("grid", std::move(eval), support, xs, config, true);
}

DensityModel DensityModel::with_quadrature(const QuadratureConfig& config) const {
  DensityModel copy = *this;
  copy.config_ = config;
  return copy;
}

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParseError(0, {key}, std::string("distribution needs a numeric array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ParseError(0, {"number"}, std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Distribution parse_distribution(const std::string& json_text, const QuadratureConfig& config) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte > 0 ? e.byte - 1 : 0, {"JSON value"}, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ParseError(0, {"type"}, "distribution JSON needs a string field 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "discrete") {
    std::optional<std::vector<double>> values;
    if (j.contains("values")) values = number_array(j, "values");
    return DiscreteDist(number_array(j, "masses"), std::move(values));
  }
  if (type == "cauchy") {
    if (!j.contains("scale") || !j.at("scale").is_number())
      throw ParseError(0, {"scale"}, "cauchy distribution needs a numeric 'scale'");
    return DensityModel::cauchy(j.at("scale").get<double>(), config);
  }
  if (type == "grid") return DensityModel::grid(number_array(j, "xs"), number_array(j, "ps"), config);
  throw ParseError(0, {"discrete", "cauchy", "grid"}, "unknown distribution type '" + type + "'");
}

Distribution load_distribution(const std::string& path, const QuadratureConfig& config) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_distribution(buffer.str(), config);
}

}  // namespace cdt
