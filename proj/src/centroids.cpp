#include "cdt/centroids.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "cdt/error.hpp"

namespace cdt {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// G'(rho(x)) = F'(x) tau'(F(x)) / rho'(x).
double gradient(const QabdSpec& spec, double x) {
  return spec.f().derivative(x) * spec.tau().derivative(spec.f()(x)) / spec.rho().derivative(x);
}

void require_increasing_gradient(const QabdSpec& spec, double lo, double hi) {
  const std::vector<double> grid = uniform_grid(lo, hi, 64);
  double previous = gradient(spec, grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = gradient(spec, grid[i]);
    if (!std::isfinite(v) || !(v > previous))
      fail(ErrorKind::NonInvertibleGradient, "G' of " + spec.to_string() + " is not strictly increasing on [" +
                                                 num(lo) + ", " + num(hi) + "]");
    previous = v;
  }
}

double solve_gradient(const QabdSpec& spec, double target, double lo, double hi) {
  double a = lo;
  double b = hi;
  if (gradient(spec, a) >= target) return a;
  if (gradient(spec, b) <= target) return b;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    if (gradient(spec, mid) < target)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

double centroid_of(const QabdSpec& spec, std::span<const double> points, std::span<const double> weights) {
  const auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const Interval dom = spec.domain();
  for (double p : points)
    if (!dom.contains(p)) fail(ErrorKind::Domain, "point " + num(p) + " outside " + dom.to_string());
  if (lo == hi) return lo;
  require_increasing_gradient(spec, lo, hi);
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double tau_prime = spec.tau().derivative(spec.f()(points[i]));
    if (!(tau_prime > 1e-300)) fail(ErrorKind::Derivative, "tau' underflows at " + num(points[i]));
    const double w = weights[i] / tau_prime;
    numerator += w * gradient(spec, points[i]);
    denominator += w;
  }
  return solve_gradient(spec, numerator / denominator, lo, hi);
}

double objective_of(const QabdSpec& spec, const WeightedSet& set, std::span<const std::size_t> assign,
                    std::span<const double> centers, ExecutionPolicy policy) {
  return reduce_terms(
      set.size(),
      [&](std::size_t i) { return set.weights()[i] * qabd(spec, centers[assign[i]], set.points()[i]).value; },
      policy);
}

}  // namespace

double bregman_centroid(const QabdSpec& spec, const WeightedSet& set) {
  return centroid_of(spec, set.points(), set.weights());
}

double centroid_objective(const QabdSpec& spec, const WeightedSet& set, double c) {
  double total = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) total += set.weights()[i] * qabd(spec, c, set.points()[i]).value;
  return total;
}

std::vector<std::size_t> assign_nearest(const QabdSpec& spec, std::span<const double> points,
                                        std::span<const double> centers, ExecutionPolicy policy) {
  if (centers.empty()) fail(ErrorKind::Param, "no centers to assign to");
  std::vector<std::size_t> out(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        std::size_t best = 0;
        double best_d = qabd(spec, centers[0], points[i]).value;
        for (std::size_t j = 1; j < centers.size(); ++j) {
          const double d = qabd(spec, centers[j], points[i]).value;
          if (d < best_d) {
            best_d = d;
            best = j;
          }
        }
        out[i] = best;
      },
      policy);
  return out;
}

Clustering kmeans_cluster(const QabdSpec& spec, const WeightedSet& set, std::size_t k, std::uint64_t seed,
                          const KmeansOptions& options) {
  const std::vector<double>& pts = set.points();
  const std::vector<double>& w = set.weights();
  const std::size_t n = pts.size();
  const std::set<double> distinct(pts.begin(), pts.end());
  if (k == 0 || k > distinct.size())
    fail(ErrorKind::Param, "k = " + std::to_string(k) + " must be in [1, " + std::to_string(distinct.size()) + "]");

  Sampler sampler(seed);
  auto draw = [&](const std::vector<double>& score) {
    double total = 0.0;
    for (double s : score) total += s;
    double u = sampler.unit() * total;
    for (std::size_t i = 0; i < score.size(); ++i) {
      if (score[i] <= 0.0) continue;
      if (u < score[i]) return i;
      u -= score[i];
    }
    for (std::size_t i = score.size(); i-- > 0;)
      if (score[i] > 0.0) return i;
    return std::size_t{0};
  };

  // k-means++ seeding.
  Clustering result;
  result.centers.push_back(pts[draw(w)]);
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = qabd(spec, result.centers[0], pts[i]).value;
  while (result.centers.size() < k) {
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) score[i] = w[i] * nearest[i];
    const double c = pts[draw(score)];
    result.centers.push_back(c);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], qabd(spec, c, pts[i]).value);
  }

  result.assignments = assign_nearest(spec, pts, result.centers, options.policy);
  result.objective = objective_of(spec, set, result.assignments, result.centers, options.policy);
  result.history.push_back(result.objective);

  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    std::vector<double> centers = result.centers;
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i) members[result.assignments[i]].push_back(i);

    std::size_t reseeds = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!members[j].empty()) continue;
      // Empty cluster: move its center to the point farthest from its own center.
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = qabd(spec, centers[result.assignments[i]], pts[i]).value;
        if (d > far_d && std::find(centers.begin(), centers.end(), pts[i]) == centers.end()) {
          far_d = d;
          far = i;
        }
      }
      centers[j] = pts[far];
      ++reseeds;
    }

    parallel_for(
        k,
        [&](std::size_t j) {
          if (members[j].empty()) return;
          std::vector<double> cp;
          std::vector<double> cw;
          double total = 0.0;
          for (std::size_t i : members[j]) total += w[i];
          for (std::size_t i : members[j]) {
            cp.push_back(pts[i]);
            cw.push_back(w[i] / total);
          }
          centers[j] = centroid_of(spec, cp, cw);
        },
        options.policy);

    std::vector<std::size_t> assign = assign_nearest(spec, pts, centers, options.policy);
    const double objective = objective_of(spec, set, assign, centers, options.policy);
    if (objective > result.objective) break;
    const double decrease = result.objective - objective;
    result.centers = std::move(centers);
    result.assignments = std::move(assign);
    result.objective = objective;
    result.history.push_back(objective);
    result.reseeds += reseeds;
    ++result.iterations;
    if (decrease < options.min_decrease && reseeds == 0) break;
  }
  return result;
}

double cluster_information(const JensenSpec& spec, const WeightedSet& set) { return jensen_diversity(spec, set); }

}  // namespace cdt
