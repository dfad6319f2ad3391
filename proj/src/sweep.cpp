#include "latinhib/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "latinhib/errors.hpp"

namespace latinhib {

std::string_view to_string(GridMode mode) {
  return mode == GridMode::uniform ? "uniform" : "distance-quantile";
}

GridMode parse_grid_mode(std::string_view name) {
  if (name == "uniform") return GridMode::uniform;
  if (name == "quantile" || name == "distance-quantile") return GridMode::distance_quantile;
  throw ParameterError("unknown grid mode '" + std::string(name) + "'");
}

double default_t_max(const DistanceMatrix& dm) { return 1.01 * dm.max(); }

SweepGrid make_grid(const DistanceMatrix& dm, const GridOptions& options) {
  const double t_min = options.t_min;
  const double t_max = options.t_max.value_or(default_t_max(dm));
  if (options.steps < 2) throw ParameterError("grid needs at least 2 steps");
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min < 0.0 || !(t_min < t_max)) {
    throw ParameterError("degenerate threshold range [" + std::to_string(t_min) + ", " +
                         std::to_string(t_max) + "]");
  }

  SweepGrid grid;
  grid.mode = options.mode;
  if (options.mode == GridMode::uniform) {
    const double span = t_max - t_min;
    const auto last = static_cast<double>(options.steps - 1);
    grid.t_values.reserve(options.steps);
    for (std::size_t i = 0; i + 1 < options.steps; ++i) {
      grid.t_values.push_back(t_min + span * (static_cast<double>(i) / last));
    }
    grid.t_values.push_back(t_max);
  } else {
    std::vector<double> distances;
    const std::size_t n = dm.size();
    distances.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) distances.push_back(dm(i, j));
    }
    std::sort(distances.begin(), distances.end());
    distances.erase(std::unique(distances.begin(), distances.end()), distances.end());

    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < distances.size(); ++i) {
      const double mid = 0.5 * (distances[i] + distances[i + 1]);
      if (mid > t_min && mid < t_max) mids.push_back(mid);
    }
    const std::size_t room = options.steps - 2;
    grid.t_values.push_back(t_min);
    if (mids.size() <= room) {
      grid.t_values.insert(grid.t_values.end(), mids.begin(), mids.end());
    } else if (room > 0) {
      // evenly ranked picks, i.e. quantiles of the midpoint distribution
      for (std::size_t q = 0; q < room; ++q) {
        const std::size_t idx = room == 1 ? mids.size() / 2 : q * (mids.size() - 1) / (room - 1);
        if (grid.t_values.back() < mids[idx]) grid.t_values.push_back(mids[idx]);
      }
    }
    grid.t_values.push_back(t_max);
  }
  return grid;
}

std::size_t count_large_classes(const ClusteringResult& result, std::size_t min_class_size) {
  return static_cast<std::size_t>(
      std::count_if(result.class_sizes.begin(), result.class_sizes.end(),
                    [&](std::size_t size) { return size >= min_class_size; }));
}

SweepCurve sweep(const DistanceMatrix& dm, const SweepGrid& grid, const DynamicsConfig& cfg,
                 std::size_t min_class_size, unsigned threads) {
  cfg.validate();
  if (min_class_size < 1) throw ParameterError("min_class_size must be at least 1");
  for (std::size_t i = 0; i < grid.t_values.size(); ++i) {
    if (!(grid.t_values[i] >= 0.0) || (i > 0 && !(grid.t_values[i - 1] < grid.t_values[i]))) {
      throw ParameterError("grid thresholds must be nonnegative and strictly increasing");
    }
  }

  SweepCurve curve;
  curve.min_class_size = min_class_size;
  curve.samples.resize(grid.t_values.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.t_values.size(); i = next++) {
      SweepSample& sample = curve.samples[i];
      sample.t = grid.t_values[i];
      try {
        const ClusteringResult result = cluster_at_threshold(dm, sample.t, cfg);
        sample.k_raw = result.k;
        sample.k_filtered = count_large_classes(result, min_class_size);
      } catch (const NonconvergenceError&) {
        sample.converged = false;
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = grid.t_values.size();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.t_values.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return curve;
}

std::vector<Plateau> detect_plateaus(const SweepCurve& curve, bool use_filtered) {
  std::vector<Plateau> plateaus;
  const auto& samples = curve.samples;
  const auto k_of = [&](const SweepSample& s) { return use_filtered ? s.k_filtered : s.k_raw; };

  std::size_t i = 0;
  while (i < samples.size()) {
    if (!samples[i].converged) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < samples.size() && samples[j + 1].converged &&
           k_of(samples[j + 1]) == k_of(samples[i])) {
      ++j;
    }
    plateaus.push_back({k_of(samples[i]), samples[i].t, samples[j].t,
                        samples[j].t - samples[i].t, j - i + 1});
    i = j + 1;
  }

  std::stable_sort(plateaus.begin(), plateaus.end(), [](const Plateau& a, const Plateau& b) {
    if (a.width != b.width) return a.width > b.width;
    if (a.k != b.k) return a.k < b.k;
    return a.t_start < b.t_start;
  });
  return plateaus;
}

}  // namespace latinhib
