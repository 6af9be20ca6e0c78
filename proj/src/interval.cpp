#include "cdt/interval.hpp"

#include <cmath>
#include <sstream>

#include "cdt/error.hpp"
#include "cdt/random.hpp"

namespace cdt {

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(' << lo << ", " << hi << ')';
  return os.str();
}

Interval sample_range(const Interval& domain) {
  double lo = domain.lo;
  double hi = domain.hi;
  if (lo == -kInf && hi == kInf) return {-20.0, 20.0};
  if (lo == -kInf) lo = hi - 40.0;
  if (hi == kInf) hi = (lo >= 0.0) ? std::max(1e3, 10.0 * lo) : lo + 40.0;
  if (lo == 0.0) return {std::min(1e-3, hi * 1e-3), hi * (1.0 - 1e-9)};
  const double margin = 1e-9 * (hi - lo);
  return {lo + margin, hi - margin};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = 0.5 * (lo + hi);
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

std::vector<double> make_grid(const Interval& range, std::size_t count) {
  if (count < 2) fail(ErrorKind::Param, "grid needs at least two points");
  if (!(range.lo < range.hi)) fail(ErrorKind::Domain, "empty grid range " + range.to_string());
  if (range.lo > 0.0) {
    std::vector<double> grid = uniform_grid(std::log(range.lo), std::log(range.hi), count);
    for (double& g : grid) g = std::exp(g);
    grid.front() = range.lo;
    grid.back() = range.hi;
    return grid;
  }
  return uniform_grid(range.lo, range.hi, count);
}

Interval parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorKind::Param, "interval must be written lo:hi, got '" + text + "'");
  auto parse_bound = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::Param, "bad interval bound '" + s + "'");
    }
  };
  Interval out{parse_bound(text.substr(0, colon)), parse_bound(text.substr(colon + 1))};
  if (!(out.lo < out.hi)) fail(ErrorKind::Param, "interval '" + text + "' is empty");
  return out;
}

double Sampler::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

}  // namespace cdt
