#include "cdt/kernels.hpp"

#include <exception>
#include <limits>

#include <omp.h>

namespace cdt {

namespace {

double cascade(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return cascade(v, half) + cascade(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return cascade(values.data(), values.size()); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, ExecutionPolicy policy) {
  if (policy == ExecutionPolicy::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(cdt_parallel_for_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first = std::current_exception();
        }
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs, ExecutionPolicy policy) {
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); }, policy);
  return out;
}

double reduce_terms(std::size_t n, const std::function<double(std::size_t)>& term, ExecutionPolicy policy) {
  std::vector<double> buffer(n);
  parallel_for(n, [&](std::size_t i) { buffer[i] = term(i); }, policy);
  return pairwise_sum(buffer);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace cdt
