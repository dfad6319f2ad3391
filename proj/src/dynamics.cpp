#include "latinhib/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "latinhib/errors.hpp"

namespace latinhib {

namespace {

struct Flow {
  double net = 0.0;  // sum_j w_ij (s_i - s_j) over live j
  bool interacting = false;
};

Flow transfer(std::span<const double> wrow, std::size_t i, std::span<const std::size_t> live,
              const std::vector<double>& s) {
  Flow flow;
  const double si = s[i];
  for (const std::size_t j : live) {
    const double wij = wrow[j];
    if (wij == 0.0) continue;
    if (j != i) flow.interacting = true;
    flow.net += wij * (si - s[j]);
  }
  return flow;
}

std::vector<std::size_t> live_indices(const std::vector<bool>& active) {
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i]) live.push_back(i);
  }
  return live;
}

// Interacting neighbours of every neuron in ascending index order (self
// excluded), compacted as neurons die. Summing over these lists visits the
// same nonzero terms in the same order as `transfer`, so the dynamics are
// bit-identical to repeated `step` calls.
class NeighborLists {
 public:
  explicit NeighborLists(std::size_t n) : offset_(n + 1, 0), length_(n, 0), scratch_(n + 1) {}

  // Rows must be appended in order 0, 1, ..., n - 1.
  template <typename WeightOf>
  void append_row(std::size_t i, std::size_t n, WeightOf weight_of) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double wij = weight_of(j);
      scratch_[k] = {static_cast<std::uint32_t>(j), wij};
      k += (j != i) & (wij > 0.0);
    }
    links_.insert(links_.end(), scratch_.begin(), scratch_.begin() + k);
    length_[i] = k;
    offset_[i + 1] = links_.size();
  }

  /// Drops dead neighbours of i and returns sum_j w_ij (s_i - s_j) over the
  /// rest together with the remaining neighbour count.
  std::pair<double, std::size_t> flow(std::size_t i, const std::vector<char>& alive,
                                      const std::vector<double>& s) {
    Link* row = links_.data() + offset_[i];
    const double si = s[i];
    double net = 0.0;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < length_[i]; ++k) {
      const Link link = row[k];
      const char live = alive[link.j];
      row[kept] = link;
      kept += static_cast<std::size_t>(live);
      // dead terms contribute a signed zero, which leaves the sum unchanged
      net += link.w * (si - s[link.j]) * static_cast<double>(live);
    }
    length_[i] = kept;
    return {net, kept};
  }

  template <typename Fn>
  void for_each_neighbor(std::size_t i, Fn fn) const {
    const Link* row = links_.data() + offset_[i];
    for (std::size_t k = 0; k < length_[i]; ++k) fn(row[k].j);
  }

 private:
  struct Link {
    std::uint32_t j;
    double w;
  };

  std::vector<std::size_t> offset_;
  std::vector<std::size_t> length_;
  std::vector<Link> links_;
  std::vector<Link> scratch_;
};

void check_size(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("too many objects for the dynamics");
  }
}

// One survivor per connected component of the live interaction graph.
std::vector<std::size_t> resolve_stagnation(const NeighborLists& links,
                                            std::span<const std::size_t> live,
                                            const std::vector<char>& alive,
                                            const std::vector<double>& s,
                                            const std::vector<double>& initial) {
  const auto better = [&](std::size_t a, std::size_t b) {
    if (s[a] != s[b]) return s[a] > s[b];
    if (initial[a] != initial[b]) return initial[a] > initial[b];
    return a < b;
  };

  std::vector<char> seen(s.size(), 0);
  std::vector<std::size_t> survivors;
  std::vector<std::size_t> queue;
  for (const std::size_t root : live) {
    if (seen[root]) continue;
    seen[root] = 1;
    queue.assign(1, root);
    std::size_t best = root;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t i = queue[head];
      if (better(i, best)) best = i;
      links.for_each_neighbor(i, [&](std::size_t j) {
        if (alive[j] && !seen[j]) {
          seen[j] = 1;
          queue.push_back(j);
        }
      });
    }
    survivors.push_back(best);
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

DynamicsOutcome transmit(NeighborLists& links, const std::vector<double>& initial,
                         const DynamicsConfig& cfg) {
  const std::size_t n = initial.size();
  std::vector<double> s = initial;
  std::vector<std::size_t> live(n);
  std::iota(live.begin(), live.end(), std::size_t{0});
  std::vector<char> alive(n, 1);
  std::vector<double> next(n, 0.0);
  std::size_t iter = 0;

  for (;;) {
    bool interacting = false;
    double max_change = 0.0;
    for (const std::size_t i : live) {
      const auto [net, neighbors] = links.flow(i, alive, s);
      interacting = interacting || neighbors > 0;
      const double delta = cfg.alpha * net;
      next[i] = s[i] + delta;
      max_change = std::max(max_change, std::abs(delta));
    }
    if (!interacting) return {live, iter};

    if (max_change <= cfg.stagnation_eps) {
      auto survivors = resolve_stagnation(links, live, alive, s, initial);
      for (const std::size_t i : live) {
        if (!std::binary_search(survivors.begin(), survivors.end(), i)) {
          s[i] = 0.0;
          alive[i] = 0;
        }
      }
      live = std::move(survivors);
      continue;
    }

    if (iter >= cfg.max_iters) throw NonconvergenceError(iter, live.size());

    std::size_t kept = 0;
    for (const std::size_t i : live) {
      if (next[i] < 0.0) {
        s[i] = 0.0;
        alive[i] = 0;
      } else {
        s[i] = next[i];
        live[kept++] = i;
      }
    }
    live.resize(kept);
    ++iter;
  }
}

}  // namespace

void DynamicsConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be positive, got " + std::to_string(alpha));
  }
  if (max_iters < 1) throw ParameterError("max_iters must be at least 1");
  if (!(stagnation_eps >= 0.0) || !std::isfinite(stagnation_eps)) {
    throw ParameterError("stagnation_eps must be finite and >= 0");
  }
}

std::size_t ActivityState::live_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

ActivityState init_activities(const InteractionWeights& w) {
  const std::size_t n = w.size();
  ActivityState state;
  state.activity.resize(n);
  state.active.assign(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = w.row(i);
    state.activity[i] = std::accumulate(row.begin(), row.end(), 0.0);
  }
  return state;
}

StepResult step(const ActivityState& state, const InteractionWeights& w,
                const DynamicsConfig& cfg) {
  cfg.validate();
  if (state.activity.size() != w.size() || state.active.size() != w.size()) {
    throw ParameterError("activity state does not match the weight matrix size");
  }
  const auto live = live_indices(state.active);
  if (live.empty()) throw ParameterError("step requires at least one active neuron");

  StepResult out{state, {}};
  for (const std::size_t i : live) {
    const Flow flow = transfer(w.row(i), i, live, state.activity);
    out.state.activity[i] = state.activity[i] + cfg.alpha * flow.net;
  }
  for (const std::size_t i : live) {
    if (out.state.activity[i] < 0.0) {
      out.state.activity[i] = 0.0;
      out.state.active[i] = false;
      out.clipped.push_back(i);
    }
  }
  ++out.state.iter;
  return out;
}

DynamicsOutcome run_dynamics(const InteractionWeights& w, const DynamicsConfig& cfg) {
  cfg.validate();
  const std::size_t n = w.size();
  check_size(n);
  NeighborLists links(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = w.row(i);
    links.append_row(i, n, [&](std::size_t j) { return row[j]; });
  }
  return transmit(links, init_activities(w).activity, cfg);
}

std::vector<std::size_t> assign_to_centers(const DistanceMatrix& dm,
                                           std::span<const std::size_t> centers) {
  const std::size_t n = dm.size();
  if (centers.empty()) throw ParameterError("center list is empty");
  std::vector<bool> is_center(n, false);
  for (const std::size_t c : centers) {
    if (c >= n) throw ParameterError("center index " + std::to_string(c) + " out of range");
    if (is_center[c]) throw ParameterError("duplicate center " + std::to_string(c));
    is_center[c] = true;
  }

  std::vector<std::size_t> labels(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = dm.row(j);
    std::size_t best = 0;
    for (std::size_t pos = 1; pos < centers.size(); ++pos) {
      const double d = row[centers[pos]];
      const double d_best = row[centers[best]];
      if (d < d_best || (d == d_best && centers[pos] < centers[best])) best = pos;
    }
    labels[j] = best;
  }
  for (std::size_t pos = 0; pos < centers.size(); ++pos) labels[centers[pos]] = pos;
  return labels;
}

ClusteringResult cluster_at_threshold(const DistanceMatrix& dm, double t,
                                      const DynamicsConfig& cfg) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ParameterError("interaction threshold must be finite and >= 0, got " +
                         std::to_string(t));
  }
  cfg.validate();
  const std::size_t n = dm.size();
  check_size(n);

  // Same weights and row sums as build_weights + init_activities, without
  // materialising the dense weight matrix.
  NeighborLists links(n);
  std::vector<double> initial(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = dm.row(i);
    double sum = 0.0;
    links.append_row(i, n, [&](std::size_t j) {
      const double wij = j == i ? 1.0 : interaction_weight(d[j], t);
      sum += wij;
      return wij;
    });
    initial[i] = sum;
  }
  DynamicsOutcome outcome = transmit(links, initial, cfg);

  ClusteringResult result;
  result.labels = assign_to_centers(dm, outcome.centers);
  result.centers = std::move(outcome.centers);
  result.k = result.centers.size();
  result.class_sizes.assign(result.k, 0);
  for (const std::size_t label : result.labels) ++result.class_sizes[label];
  result.t = t;
  result.alpha = cfg.alpha;
  result.iters = outcome.iters;
  return result;
}

}  // namespace latinhib
