#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "latinhib/dynamics.hpp"
#include "latinhib/model.hpp"

namespace latinhib {

enum class GridMode { uniform, distance_quantile };

std::string_view to_string(GridMode mode);
/// Accepts "uniform" and "quantile"/"distance-quantile".
GridMode parse_grid_mode(std::string_view name);

struct GridOptions {
  GridMode mode = GridMode::uniform;
  std::size_t steps = 200;
  double t_min = 0.0;
  std::optional<double> t_max;  // defaults to 1.01 * max distance
};

struct SweepGrid {
  GridMode mode = GridMode::uniform;
  std::vector<double> t_values;  // strictly increasing
};

struct SweepSample {
  double t = 0.0;
  std::size_t k_raw = 0;
  std::size_t k_filtered = 0;
  bool converged = true;

  bool operator==(const SweepSample&) const = default;
};

/// K(T) samples in grid order.
struct SweepCurve {
  std::vector<SweepSample> samples;
  std::size_t min_class_size = 1;

  bool operator==(const SweepCurve&) const = default;
};

/// Maximal run of consecutive converged samples sharing one class count.
struct Plateau {
  std::size_t k = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double width = 0.0;  // t_end - t_start
  std::size_t sample_count = 0;

  bool operator==(const Plateau&) const = default;
};

/// Resolved default upper threshold for `dm`.
double default_t_max(const DistanceMatrix& dm);

/// Builds the threshold axis.
///
/// Uniform mode spaces `steps` values evenly over [t_min, t_max], both ends
/// included. Quantile mode takes the midpoints between consecutive distinct
/// off-diagonal distances inside [t_min, t_max], thins them to at most
/// `steps - 2` evenly ranked picks and brackets them with t_min and t_max.
SweepGrid make_grid(const DistanceMatrix& dm, const GridOptions& options);

/// Clusters at every grid threshold. Samples whose dynamics fail to converge
/// are flagged and carry k = 0. `threads == 0` uses the hardware concurrency.
SweepCurve sweep(const DistanceMatrix& dm, const SweepGrid& grid, const DynamicsConfig& cfg,
                 std::size_t min_class_size = 1, unsigned threads = 0);

/// Number of classes with at least `min_class_size` members.
std::size_t count_large_classes(const ClusteringResult& result, std::size_t min_class_size);

/// Run-length plateaus ordered by width (descending), then k, then t_start.
/// Nonconverged samples break runs and belong to no plateau.
std::vector<Plateau> detect_plateaus(const SweepCurve& curve, bool use_filtered);

}  // namespace latinhib
