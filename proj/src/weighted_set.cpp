#include "cdt/weighted_set.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cdt/error.hpp"

namespace cdt {

WeightedSet::WeightedSet(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) fail(ErrorKind::LengthMismatch, "weighted set is empty");
  if (points_.size() != weights_.size())
    fail(ErrorKind::LengthMismatch, "weighted set has " + std::to_string(points_.size()) + " points and " +
                                        std::to_string(weights_.size()) + " weights");
  double total = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) fail(ErrorKind::Domain, "point " + std::to_string(i) + " is not finite");
    if (!(weights_[i] > 0.0)) fail(ErrorKind::Weight, "weight " + std::to_string(i) + " is not positive");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorKind::Weight, "weights sum to " + std::to_string(total));
}

WeightedSet WeightedSet::uniform(std::vector<double> points) {
  const std::size_t n = points.size();
  return WeightedSet(std::move(points), std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0));
}

WeightedSet WeightedSet::normalized(std::vector<double> points, std::vector<double> raw_weights) {
  double total = 0.0;
  for (double w : raw_weights) {
    if (!(w > 0.0)) fail(ErrorKind::Weight, "raw weights must be positive");
    total += w;
  }
  for (double& w : raw_weights) w /= total;
  return WeightedSet(std::move(points), std::move(raw_weights));
}

}  // namespace cdt
