#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "latinhib/model.hpp"

namespace latinhib::testing {

/// Random point cloud: a few Gaussian blobs in the plane, or uniform noise.
inline PointSet random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim = 2) {
  std::uniform_int_distribution<int> blobs(1, 4);
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  std::uniform_real_distribution<double> spread(0.3, 2.0);
  const int k = blobs(rng);
  std::vector<std::vector<double>> centers(k, std::vector<double>(dim));
  for (auto& c : centers) {
    for (double& x : c) x = box(rng);
  }
  const double sigma = spread(rng);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = centers[i % centers.size()];
    for (std::size_t d = 0; d < dim; ++d) rows[i][d] = c[d] + noise(rng);
  }
  return PointSet(rows);
}

inline std::vector<std::vector<double>> to_nested(const DistanceMatrix& dm) {
  std::vector<std::vector<double>> out(dm.size(), std::vector<double>(dm.size()));
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) out[i][j] = dm(i, j);
  }
  return out;
}

/// True when two labelings induce the same partition.
inline bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace latinhib::testing
