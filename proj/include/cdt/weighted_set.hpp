#pragma once

#include <cstddef>
#include <vector>

namespace cdt {

// Points with positive weights summing to 1 (within 1e-9).
class WeightedSet {
 public:
  WeightedSet(std::vector<double> points, std::vector<double> weights);

  // Equal weights 1/n.
  static WeightedSet uniform(std::vector<double> points);
  // Divides positive raw weights by their sum.
  static WeightedSet normalized(std::vector<double> points, std::vector<double> raw_weights);

  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

}  // namespace cdt
