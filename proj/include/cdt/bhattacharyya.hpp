#pragma once

#include "cdt/distributions.hpp"
#include "cdt/divergences.hpp"
#include "cdt/kernels.hpp"
#include "cdt/means.hpp"

namespace cdt {

// Sum or integral of M(p(x), q(x); 1 - alpha, alpha).
double bhat_coefficient(const MeanSpec& m, double alpha, const Distribution& p, const Distribution& q,
                        ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Built-in comparable pairs with m <= n: G <= A, H <= A, H <= G and power means
// ordered by exponent (also through power_index of other families).
bool known_dominated(const MeanSpec& m, const MeanSpec& n);

struct CmbdOptions {
  // Skip the sampled check that m <= n. Known pairs are always trusted.
  bool trusted_dominance = false;
  DominanceOptions dominance{};
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

// -log(c^M_alpha / c^N_alpha) for m <= n.
DivergenceValue cmbd(const MeanSpec& m, const MeanSpec& n, double alpha, const Distribution& p,
                     const Distribution& q, const CmbdOptions& options = {});

// log(c^{P_d1} / c^{P_d2}) / (d1 - d2) for distinct nonzero d1, d2.
double power_cmbd(double delta1, double delta2, double alpha, const Distribution& p, const Distribution& q,
                  ExecutionPolicy policy = ExecutionPolicy::Parallel);

// (1 - sum p^alpha q^{1 - alpha}) / (alpha (1 - alpha)).
double alpha_divergence(double alpha, const Distribution& p, const Distribution& q,
                        ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Harmonic-arithmetic distance between Cauchy(0, s1) and Cauchy(0, s2):
// log(a b) / 2 with a = (1 - alpha)/s1 + alpha/s2, b = (1 - alpha) s1 + alpha s2.
double cauchy_ha_closed_form(double s1, double s2, double alpha);

// Sum or integral of M_g(p, q) - M_f(p, q); requires g o f^{-1} convex.
double mean_gap_distance(const Generator& f, const Generator& g, const Distribution& p, const Distribution& q,
                         ExecutionPolicy policy = ExecutionPolicy::Parallel);

}  // namespace cdt
