#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cdt/divergences.hpp"
#include "cdt/kernels.hpp"
#include "cdt/random.hpp"
#include "cdt/weighted_set.hpp"

namespace cdt {

// Minimizer of sum_i w_i qabd(c : p_i): solves
// G'(c') = sum_i (w'_i / W') G'(rho(p_i)) with w'_i = w_i / tau'(F(p_i)).
double bregman_centroid(const QabdSpec& spec, const WeightedSet& set);

// sum_i w_i qabd(c : p_i).
double centroid_objective(const QabdSpec& spec, const WeightedSet& set, double c);

struct Clustering {
  std::vector<std::size_t> assignments;
  std::vector<double> centers;
  double objective = 0.0;
  std::size_t iterations = 0;
  // Objective after seeding and after every accepted update.
  std::vector<double> history;
  std::size_t reseeds = 0;
};

struct KmeansOptions {
  std::size_t max_iterations = 100;
  double min_decrease = 1e-10;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

// Nearest center by qabd(center : point); ties go to the lowest index.
std::vector<std::size_t> assign_nearest(const QabdSpec& spec, std::span<const double> points,
                                        std::span<const double> centers,
                                        ExecutionPolicy policy = ExecutionPolicy::Parallel);

// k-means++ seeding with qabd(candidate : point), then Lloyd iterations with
// bregman_centroid updates.
Clustering kmeans_cluster(const QabdSpec& spec, const WeightedSet& set, std::size_t k,
                          std::uint64_t seed = kDefaultSeed, const KmeansOptions& options = {});

// Bregman information of the set: jensen_diversity.
double cluster_information(const JensenSpec& spec, const WeightedSet& set);

}  // namespace cdt
