#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace cdt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Open real interval (lo, hi); either bound may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const noexcept { return x > lo && x < hi; }
  bool finite() const noexcept { return lo > -kInf && hi < kInf; }
  bool positive() const noexcept { return lo >= 0.0; }
  double width() const noexcept { return hi - lo; }

  static Interval real_line() { return {}; }
  static Interval positive_reals() { return {0.0, kInf}; }

  std::string to_string() const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Closed finite range used for sampling an open (possibly unbounded) interval.
// Unbounded positive domains clip to [1e-3, 1e3], other unbounded sides to +-20;
// finite bounds are pulled inward by a relative margin.
Interval sample_range(const Interval& domain);

// Grid of `count` points covering [range.lo, range.hi]: geometric spacing when
// the range is strictly positive, uniform otherwise.
std::vector<double> make_grid(const Interval& range, std::size_t count);

std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

Interval parse_interval(const std::string& text);  // "a:b", bounds may be inf/-inf

}  // namespace cdt
