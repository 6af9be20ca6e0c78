#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cdt/generator.hpp"
#include "cdt/interval.hpp"
#include "cdt/kernels.hpp"

namespace cdt {

enum class QuadratureRule { AdaptiveSimpson, GaussLegendre };

struct QuadratureConfig {
  QuadratureRule rule = QuadratureRule::AdaptiveSimpson;
  std::size_t nodes = 20;    // Gauss-Legendre nodes per panel
  std::size_t panels = 16;   // initial panels per segment
  double abs_tol = 1e-9;
  int max_depth = 20;        // adaptive refinement levels
  // Infinite ends are mapped by x = c + scale * tan(t).
  double tail_scale = 1.0;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

// Nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(std::size_t n);

// Integral of f over the open interval `support`, split at `breakpoints`
// (points where f or its derivatives jump). Throws QuadratureFailure when
// adaptive refinement exceeds max_depth or the result is not finite.
double integrate(const ScalarFn& f, const Interval& support, std::span<const double> breakpoints,
                 const QuadratureConfig& config = {});

}  // namespace cdt
