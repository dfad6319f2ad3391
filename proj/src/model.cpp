#include "latinhib/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "latinhib/errors.hpp"

namespace latinhib {

namespace {

std::string cell(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

PointSet::PointSet(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("point set is empty");
  n_ = rows.size();
  m_ = rows.front().size();
  if (m_ == 0) throw InputError("points have no features");
  values_.reserve(n_ * m_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != m_) {
      throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " features, expected " + std::to_string(m_));
    }
    for (std::size_t k = 0; k < m_; ++k) {
      if (!std::isfinite(rows[i][k])) {
        throw InputError("non-finite feature at row " + std::to_string(i) + ", column " +
                         std::to_string(k));
      }
      values_.push_back(rows[i][k]);
    }
  }
}

DistanceMatrix::DistanceMatrix(SquareMatrix d) : d_(std::move(d)) {
  const std::size_t n = d_.size();
  if (n == 0) throw InputError("distance matrix is empty");
  min_off_ = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d_(i, i) != 0.0) throw InputError("nonzero diagonal entry at " + cell(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = d_(i, j);
      if (!std::isfinite(v)) throw InputError("non-finite distance at " + cell(i, j));
      if (v < 0.0) throw InputError("negative distance at " + cell(i, j));
      if (v != d_(j, i)) {
        throw InputError("asymmetric distances at " + cell(i, j) + "/" + cell(j, i));
      }
      max_ = std::max(max_, v);
      min_off_ = std::min(min_off_, v);
    }
  }
}

DistanceMatrix distances_from_points(const PointSet& points) {
  const std::size_t n = points.size();
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = points[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = points[j];
      double sq = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
      }
      const double dist = std::sqrt(sq);
      if (!std::isfinite(dist)) {
        throw InputError("distance between rows " + std::to_string(i) + " and " +
                         std::to_string(j) + " overflows");
      }
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return DistanceMatrix(std::move(d));
}

DistanceMatrix scale_distances(const DistanceMatrix& dm, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("scale factor must be positive");
  const std::size_t n = dm.size();
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = c * dm(i, j);
    }
  }
  return DistanceMatrix(std::move(d));
}

InteractionWeights build_weights(const DistanceMatrix& dm, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ParameterError("interaction threshold must be finite and >= 0, got " +
                         std::to_string(t));
  }
  const std::size_t n = dm.size();
  SquareMatrix w(n);
  // Row-wise fill; the input is exactly symmetric, so evaluating the same
  // expression for (i, j) and (j, i) gives a bit-exact symmetric result.
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = dm.row(i);
    for (std::size_t j = 0; j < n; ++j) w(i, j) = interaction_weight(d[j], t);
    w(i, i) = 1.0;
  }
  return InteractionWeights(std::move(w), t);
}

}  // namespace latinhib
