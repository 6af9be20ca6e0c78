#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdt/generator.hpp"
#include "cdt/interval.hpp"
#include "cdt/random.hpp"

namespace cdt {

enum class MeanFamily { QuasiArithmetic, Power, Lehmer, Gini, Lagrange, Cauchy, Stolarsky, Dual };

// Tagged description of an abstract mean. Immutable value type; the dual
// family shares its inner spec.
class MeanSpec {
 public:
  static MeanSpec quasi_arithmetic(Generator f);
  static MeanSpec power(double delta);
  static MeanSpec lehmer(double delta);
  static MeanSpec gini(double delta1, double delta2);
  static MeanSpec lagrange(Generator f);
  static MeanSpec cauchy(Generator f, Generator g);
  static MeanSpec stolarsky(double p);
  static MeanSpec dual(MeanSpec inner);

  static MeanSpec arithmetic() { return quasi_arithmetic(generators::identity()); }
  static MeanSpec geometric() { return quasi_arithmetic(generators::log()); }
  static MeanSpec harmonic() { return quasi_arithmetic(generators::reciprocal()); }

  MeanFamily family() const noexcept { return family_; }
  bool symmetric() const noexcept { return true; }
  bool homogeneous() const noexcept;
  bool supports_weights() const noexcept;

  const std::vector<double>& params() const noexcept { return params_; }
  const Generator& generator(std::size_t i = 0) const { return generators_.at(i); }
  const MeanSpec& inner() const;

  // Admissible argument values.
  Interval domain() const;

  // Exponent delta when this mean coincides with the power mean P_delta.
  std::optional<double> power_index() const;

  std::string to_string() const;

 private:
  MeanSpec(MeanFamily family, std::vector<double> params, std::vector<Generator> gens,
           std::shared_ptr<const MeanSpec> inner);

  MeanFamily family_;
  std::vector<double> params_;
  std::vector<Generator> generators_;
  std::shared_ptr<const MeanSpec> inner_;
};

// Compact spec strings: qa:log, power:2, lehmer:-0.5, gini:1:2, lagrange:log,
// cauchy:log:identity, stolarsky:2, dual:power:1. A, G and H are accepted as
// shorthand for qa:identity, qa:log and qa:reciprocal.
MeanSpec parse_mean_spec(std::string_view text);

// Weighted n-ary mean. Weights must be positive and sum to 1 within 1e-9.
double weighted_mean(const MeanSpec& spec, std::span<const double> values,
                     std::span<const double> weights);

// Unweighted bivariate mean M(x, y).
double mean(const MeanSpec& spec, double x, double y);

// Barycentric mean M(p, q; 1 - alpha, alpha) for alpha in [0, 1], with
// M_0 = p and M_1 = q. Families without weights only accept alpha = 1/2.
double barycenter(const MeanSpec& spec, double p, double q, double alpha);

// Same with explicit weights (w_p, w_q), w_p + w_q = 1. Lets callers pass a
// tiny w_p without the rounding of 1 - alpha.
double barycenter(const MeanSpec& spec, double p, double q, double w_p, double w_q);

// Generator f with M = M_f when the spec is quasi-arithmetic or a power mean.
std::optional<Generator> quasi_arithmetic_generator(const MeanSpec& spec);

double lagrange_mean(const Generator& f, double p, double q);
double cauchy_mean(const Generator& f, const Generator& g, double p, double q);
double stolarsky_mean(double p_param, double x, double y);
double dual_mean(const MeanSpec& spec, double x, double y);

enum class Dominance { Dominates, DominatedBy, Incomparable };
std::string_view to_string(Dominance d);

struct DominanceWitness {
  double x;
  double y;
  double alpha;
  double a_value;
  double b_value;
};

struct DominanceResult {
  Dominance verdict;
  std::optional<DominanceWitness> a_below_b;  // counterexample to "a dominates b"
  std::optional<DominanceWitness> a_above_b;  // counterexample to "a dominated by b"
  std::size_t samples;
};

struct DominanceOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  // Relative slack for floating-point ties.
  double tolerance = 4e-15;
};

// Sampling-based dominance test over (x, y, alpha) triples; a falsification
// procedure, not a proof. alpha is fixed to 1/2 unless both specs take weights.
DominanceResult dominates(const MeanSpec& a, const MeanSpec& b, const Interval& domain,
                          const DominanceOptions& options = {});

}  // namespace cdt
