#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdt/convexity.hpp"
#include "cdt/function_model.hpp"
#include "cdt/generator.hpp"
#include "cdt/means.hpp"
#include "cdt/weighted_set.hpp"

namespace cdt {

struct DivergenceValue {
  double value = 0.0;
  // Set when a small negative rounding residue was replaced by 0.
  bool clamped = false;
  // (from, to) of D(from : to).
  std::pair<double, double> orientation{0.0, 0.0};
};

// F with the (M, N) pair it is checked against. Construction runs the grid
// check when both means are quasi-arithmetic (power means included) and the
// sampled midpoint certificate otherwise; NotConvex throws ConvexityError.
class JensenSpec {
 public:
  static JensenSpec create(FunctionModel f, MeanSpec m, MeanSpec n, const ConvexityOptions& options = {});
  // No check; the caller vouches for the verdict.
  static JensenSpec trusted(FunctionModel f, MeanSpec m, MeanSpec n,
                            ConvexityKind verdict = ConvexityKind::Convex);

  const FunctionModel& f() const noexcept { return f_; }
  const MeanSpec& m() const noexcept { return m_; }
  const MeanSpec& n() const noexcept { return n_; }
  ConvexityKind verdict() const noexcept { return verdict_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  JensenSpec(FunctionModel f, MeanSpec m, MeanSpec n, ConvexityKind verdict);

  FunctionModel f_;
  MeanSpec m_;
  MeanSpec n_;
  ConvexityKind verdict_;
  std::vector<std::string> warnings_;
};

// F with generators (rho, tau) of a quasi-arithmetic Bregman divergence, and
// the ordinary generator G = tau o F o rho^{-1}.
class QabdSpec {
 public:
  static QabdSpec create(FunctionModel f, Generator rho, Generator tau, const ConvexityOptions& options = {});
  static QabdSpec trusted(FunctionModel f, Generator rho, Generator tau,
                          ConvexityKind verdict = ConvexityKind::Convex);

  const FunctionModel& f() const noexcept { return f_; }
  const Generator& rho() const noexcept { return rho_; }
  const Generator& tau() const noexcept { return tau_; }
  const FunctionModel& ordinary() const noexcept { return g_; }
  ConvexityKind verdict() const noexcept { return verdict_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  Interval domain() const;
  std::string to_string() const;

 private:
  QabdSpec(FunctionModel f, Generator rho, Generator tau, FunctionModel g, ConvexityKind verdict);

  FunctionModel f_;
  Generator rho_;
  Generator tau_;
  FunctionModel g_;
  ConvexityKind verdict_;
  std::vector<std::string> warnings_;
};

// N(F(p), F(q)) - F(M(p, q)).
DivergenceValue jccd(const JensenSpec& spec, double p, double q);
DivergenceValue jccd(const FunctionModel& f, const MeanSpec& m, const MeanSpec& n, double p, double q);

// N_alpha(F(p), F(q)) - F(M_alpha(p, q)) with weights (1 - alpha, alpha), alpha in (0, 1).
DivergenceValue skew_jccd(const JensenSpec& spec, double alpha, double p, double q);
DivergenceValue skew_jccd(const FunctionModel& f, const MeanSpec& m, const MeanSpec& n, double alpha, double p,
                          double q);

// sign(alpha (1 - alpha)) (A_alpha(F(p), F(q)) - F(A_alpha(p, q))) for real alpha outside {0, 1}.
double extended_skew_jensen(const FunctionModel& f, double alpha, double p, double q);

// N(F(x); w) - F(M(x; w)).
double jensen_diversity(const JensenSpec& spec, const WeightedSet& points);

// (gamma(y) - gamma(x)) / gamma'(x).
double kappa(const Generator& gamma, double x, double y);

// kappa_tau(F(q) : F(p)) - kappa_rho(q : p) F'(q).
DivergenceValue qabd(const QabdSpec& spec, double p, double q);

struct ConformalParts {
  double factor;  // 1 / tau'(F(q))
  double base;    // B_G(rho(p) : rho(q))
};
ConformalParts qabd_conformal(const QabdSpec& spec, double p, double q);

// J_alpha(p : q) / (alpha (1 - alpha)) at alpha = 1 - a for each a in `steps`.
std::vector<double> bccd_numeric(const JensenSpec& spec, double p, double q, std::span<const double> steps);

// skew_jccd at alpha = (1 + omega) / 2 divided by 1 - omega^2.
double omega_divergence(const JensenSpec& spec, double omega, double p, double q);

// (q^{1+d} - q^d - p^{1+d} + p^d) / p^d.
double chi(double delta, double p, double q);

// chi_{d'}(F(p) : F(q)) - chi_d(p : q) F'(p). F is first certified
// (L_d, L_d')-convex by midpoint sampling on [min(p, q), max(p, q)].
double lehmer_bregman(const FunctionModel& f, double delta, double delta_prime, double p, double q);

// (B(p : m) + B(q : m)) / 2 with m = M_rho(p, q).
double jensen_bregman(const QabdSpec& spec, double p, double q);

// Sum of componentwise qabd values.
double separable_divergence(std::span<const QabdSpec> specs, std::span<const double> p, std::span<const double> q);

}  // namespace cdt
