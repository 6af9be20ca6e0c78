#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cdt/generator.hpp"

namespace cdt {

enum class ExecutionPolicy { Serial, Parallel };

// Pairwise (cascade) summation; order depends only on the length, so serial
// and parallel callers that fill the same buffer get identical sums.
double pairwise_sum(std::span<const double> values);

// Runs body(i) for i in [0, n). Under Parallel the first exception by index is
// rethrown after the loop, matching what the serial loop would throw.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  ExecutionPolicy policy = ExecutionPolicy::Parallel);

// out[i] = f(xs[i]).
std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs,
                                  ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Sum of term(i) over [0, n) with a deterministic summation tree.
double reduce_terms(std::size_t n, const std::function<double(std::size_t)>& term,
                    ExecutionPolicy policy = ExecutionPolicy::Parallel);

int max_threads();

}  // namespace cdt
