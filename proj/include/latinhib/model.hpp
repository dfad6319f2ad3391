#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace latinhib {

/// Dense row-major N x N matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// N objects described by m real features each.
class PointSet {
 public:
  /// Throws InputError for empty input, ragged rows or non-finite values.
  explicit PointSet(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_; }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {values_.data() + i * m_, m_};
  }

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> values_;
};

/// Symmetric matrix of nonnegative pairwise distances with a zero diagonal.
/// This is the only input the clustering dynamics needs.
class DistanceMatrix {
 public:
  /// Validates symmetry (exact), zero diagonal, finiteness and
  /// nonnegativity. Throws InputError naming the offending indices.
  explicit DistanceMatrix(SquareMatrix d);

  std::size_t size() const noexcept { return d_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }
  std::span<const double> row(std::size_t i) const noexcept { return d_.row(i); }
  const SquareMatrix& matrix() const noexcept { return d_; }

  double max() const noexcept { return max_; }
  /// Smallest off-diagonal entry; 0 when there is a single object.
  double min_off_diagonal() const noexcept { return min_off_; }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  SquareMatrix d_;
  double max_ = 0.0;
  double min_off_ = 0.0;
};

/// Threshold-gated connection strengths between neurons.
///
/// w(i, i) = 1 for every i. For i != j the weight is T^2 / (D^2 + T^2) when
/// D <= T and exactly 0 otherwise, so interacting pairs always have a weight
/// in [0.5, 1]. At T = 0 no pair interacts.
class InteractionWeights {
 public:
  InteractionWeights(SquareMatrix w, double threshold) : w_(std::move(w)), t_(threshold) {}

  std::size_t size() const noexcept { return w_.size(); }
  double threshold() const noexcept { return t_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return w_(i, j); }
  std::span<const double> row(std::size_t i) const noexcept { return w_.row(i); }

 private:
  SquareMatrix w_;
  double t_;
};

/// Off-diagonal connection strength for distance d at threshold t >= 0:
/// T^2 / (D^2 + T^2) when d <= t, else 0; no pair interacts at t = 0.
inline double interaction_weight(double d, double t) noexcept {
  if (t == 0.0 || d > t) return 0.0;
  const double r = d / t;  // ratio form, r <= 1 so nothing overflows
  return 1.0 / (1.0 + r * r);
}

/// Euclidean distances between every pair of points. Each pair is computed
/// once and mirrored.
DistanceMatrix distances_from_points(const PointSet& points);

/// Multiplies every distance by c > 0.
DistanceMatrix scale_distances(const DistanceMatrix& dm, double c);

/// Throws ParameterError for negative or non-finite t.
InteractionWeights build_weights(const DistanceMatrix& dm, double t);

}  // namespace latinhib
