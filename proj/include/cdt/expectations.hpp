#pragma once

#include <span>

#include "cdt/distributions.hpp"
#include "cdt/generator.hpp"
#include "cdt/kernels.hpp"

namespace cdt {

// f^{-1}((1/n) sum f(x_i)).
double qa_mean(const Generator& f, std::span<const double> samples,
               ExecutionPolicy policy = ExecutionPolicy::Parallel);

// f^{-1}(E[f(X)]). Discrete distributions need support values; with
// `normalize` the expectation is divided by the total mass.
double qa_expected_value(const Generator& f, const Distribution& dist, bool normalize = false,
                         ExecutionPolicy policy = ExecutionPolicy::Parallel);

}  // namespace cdt
