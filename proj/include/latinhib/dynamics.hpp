#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "latinhib/model.hpp"

namespace latinhib {

struct DynamicsConfig {
  double alpha = 0.05;             // transfer speed
  std::size_t max_iters = 100000;  // step cap before NonconvergenceError
  double stagnation_eps = 1e-12;   // absolute per-neuron change treated as "no change"

  /// Throws ParameterError when a field is out of range.
  void validate() const;
};

/// Neuron activities at a given step. Inactive neurons hold exactly 0.
struct ActivityState {
  std::vector<double> activity;
  std::vector<bool> active;
  std::size_t iter = 0;

  std::size_t live_count() const;
  bool operator==(const ActivityState&) const = default;
};

struct StepResult {
  ActivityState state;
  std::vector<std::size_t> clipped;  // neurons eliminated by this step, ascending
};

struct DynamicsOutcome {
  std::vector<std::size_t> centers;  // surviving neurons, ascending
  std::size_t iters = 0;
};

struct ClusteringResult {
  std::vector<std::size_t> centers;      // object indices, ascending
  std::vector<std::size_t> labels;       // position in `centers` for every object
  std::vector<std::size_t> class_sizes;  // members per class, same order as centers
  std::size_t k = 0;
  double t = 0.0;
  double alpha = 0.0;
  std::size_t iters = 0;

  bool operator==(const ClusteringResult&) const = default;
};

/// Initial activity of every neuron: the row sum of its weights, which is
/// at least 1 because of the unit self-connection.
ActivityState init_activities(const InteractionWeights& w);

/// One synchronous transfer step. Every active neuron i moves by
/// alpha * sum_j w(i, j) * (s_i - s_j) over active j, computed from the old
/// state; afterwards any neuron that went negative is set to 0 and removed.
StepResult step(const ActivityState& state, const InteractionWeights& w,
                const DynamicsConfig& cfg);

/// Iterates `step` until no two active neurons interact and returns the
/// survivors.
///
/// When interacting neurons are exactly balanced the update is a fixed point.
/// If no neuron moves by more than `stagnation_eps` while interacting pairs
/// remain, each connected component of the active interaction graph keeps one
/// neuron: the one with the largest current activity, then the largest
/// initial activity, then the lowest index.
///
/// Throws NonconvergenceError after `max_iters` steps.
DynamicsOutcome run_dynamics(const InteractionWeights& w, const DynamicsConfig& cfg);

/// Nearest-center labels. Ties go to the center with the lowest index and
/// every center is labelled with its own class. Throws ParameterError on an
/// empty, duplicated or out-of-range center list.
std::vector<std::size_t> assign_to_centers(const DistanceMatrix& dm,
                                           std::span<const std::size_t> centers);

/// Weights, activities, dynamics and assignment for a single threshold.
ClusteringResult cluster_at_threshold(const DistanceMatrix& dm, double t,
                                      const DynamicsConfig& cfg);

}  // namespace latinhib
