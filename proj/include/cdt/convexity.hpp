#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "cdt/function_model.hpp"
#include "cdt/generator.hpp"
#include "cdt/interval.hpp"
#include "cdt/kernels.hpp"
#include "cdt/means.hpp"
#include "cdt/random.hpp"

namespace cdt {

// G = tau o F o rho^{-1} on rho(I). F is (M_rho, M_tau)-convex iff G is convex.
FunctionModel to_ordinary(const FunctionModel& f, const Generator& rho, const Generator& tau);

enum class ConvexityKind { Convex, Affine, NotConvex };
std::string_view to_string(ConvexityKind kind);

struct ConvexityVerdict {
  ConvexityKind kind;
  // Points (x0, x1, x2) of the original domain where convexity fails.
  std::optional<std::array<double, 3>> witness;
  // Largest violation seen, in units of the tolerance.
  double worst_ratio = 0.0;
};

struct ConvexityOptions {
  std::size_t grid = 257;
  // Closed sampling range inside the domain; defaults to sample_range of the
  // common domain, shrunk to where F stays finite.
  std::optional<Interval> range;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

// Range used when none is given: sample_range(domain of F and rho), with the
// ends pulled in until F is finite.
Interval default_check_range(const FunctionModel& f, const Generator& rho);
// Same, but also keeps tau(F) finite where F lands in the domain of tau.
Interval default_check_range(const FunctionModel& f, const Generator& rho, const Generator& tau);

// Second divided differences of G on the grid plus the midpoint inequality
// G((u_i + u_j)/2) <= (G(u_i) + G(u_j))/2 on all grid pairs. Tolerances are
// 1e-9 times the local magnitude of G.
ConvexityVerdict is_mn_convex(const FunctionModel& f, const Generator& rho, const Generator& tau,
                              const ConvexityOptions& options = {});

// Determinant of rows (1, f(t), g(t)) for t = x, y, z. Requires
// f(x) <= f(y) <= f(z).
double relative_convexity_det(const FunctionModel& f, const FunctionModel& g, double x, double y, double z);

// g convex relative to f: determinant >= -tol over consecutive grid triples and
// `random_triples` seeded random triples.
bool is_relatively_convex(const FunctionModel& f, const FunctionModel& g, const Interval& range,
                          std::size_t grid = 257, std::size_t random_triples = 10000,
                          std::uint64_t seed = kDefaultSeed);

// f_{d1,d2} on I_{d1}: sign(d2) f^{d2}(x^{1/d1}), with exp in place of x^{1/d1}
// when d1 = 0 and log in place of sign(d2) f^{d2} when d2 = 0. f is
// (P_d1, P_d2)-convex iff the result is convex.
FunctionModel power_convexity_transform(const FunctionModel& f, double delta1, double delta2);

struct MidpointCertificate {
  bool holds;
  std::size_t samples;
  std::optional<std::array<double, 2>> witness;  // (p, q)
};

// F(M(p, q)) <= N(F(p), F(q)) on `samples` seeded random pairs of `range`.
// Works for any pair of means, including those without a generator.
MidpointCertificate certify_mn_convex(const FunctionModel& f, const MeanSpec& m, const MeanSpec& n,
                                      const Interval& range, std::size_t samples = 10000,
                                      std::uint64_t seed = kDefaultSeed);

}  // namespace cdt
