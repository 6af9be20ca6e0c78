#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cdt/generator.hpp"
#include "cdt/interval.hpp"
#include "cdt/quadrature.hpp"

namespace cdt {

// Probability masses, optionally attached to support values.
class DiscreteDist {
 public:
  // Masses must be nonnegative and sum to 1 within 1e-9.
  explicit DiscreteDist(std::vector<double> masses, std::optional<std::vector<double>> values = std::nullopt);
  // Positive measure without the normalization check.
  static DiscreteDist unnormalized(std::vector<double> masses, std::optional<std::vector<double>> values = std::nullopt);

  const std::vector<double>& masses() const noexcept { return masses_; }
  const std::optional<std::vector<double>>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return masses_.size(); }
  bool normalized() const noexcept { return normalized_; }

 private:
  DiscreteDist(std::vector<double> masses, std::optional<std::vector<double>> values, bool check);

  std::vector<double> masses_;
  std::optional<std::vector<double>> values_;
  bool normalized_ = true;
};

// Nonnegative density on an open support with its quadrature settings.
class DensityModel {
 public:
  // Checks that the density integrates to 1 within config.abs_tol unless
  // `check_normalization` is false.
  DensityModel(std::string id, ScalarFn eval, Interval support, std::vector<double> breakpoints = {},
               QuadratureConfig config = {}, bool check_normalization = true);

  static DensityModel cauchy(double scale, QuadratureConfig config = {});
  // Piecewise-constant density: mass ps[i] spread uniformly on [xs[i], xs[i+1]).
  static DensityModel grid(std::vector<double> xs, std::vector<double> ps, QuadratureConfig config = {});

  const std::string& id() const noexcept { return id_; }
  double operator()(double x) const { return eval_(x); }
  const Interval& support() const noexcept { return support_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const QuadratureConfig& quadrature() const noexcept { return config_; }
  std::optional<double> cauchy_scale() const noexcept { return cauchy_scale_; }

  DensityModel with_quadrature(const QuadratureConfig& config) const;

 private:
  std::string id_;
  ScalarFn eval_;
  Interval support_;
  std::vector<double> breakpoints_;
  QuadratureConfig config_;
  std::optional<double> cauchy_scale_;
};

using Distribution = std::variant<DiscreteDist, DensityModel>;

// {"type":"discrete","masses":[...]} with optional "values", {"type":"cauchy","scale":s},
// {"type":"grid","xs":[...],"ps":[...]}.
Distribution parse_distribution(const std::string& json_text, const QuadratureConfig& config = {});
Distribution load_distribution(const std::string& path, const QuadratureConfig& config = {});

}  // namespace cdt
