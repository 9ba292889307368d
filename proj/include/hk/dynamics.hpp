#pragma once

#include <optional>
#include <vector>

#include "hk/model.hpp"
#include "hk/rng.hpp"

namespace hk {

inline double clamp01(double v) { return v > 1.0 ? 1.0 : (v < 0.0 ? 0.0 : v); }

// Participants are indexed 0..n-1 (mobile) followed by n..n+m-1 (stubborn
// anchors, B1 block first). Stubborn participants join the pool only for the
// stubborn variants.
std::vector<std::size_t> neighbor_set(std::size_t i, const OpinionState& state,
                                      const ModelConfig& config);

// Arithmetic mean over neighbor_set(i); always defined since i is its own
// neighbor.
double local_mean(std::size_t i, const OpinionState& state, const ModelConfig& config);

// Pre-clamp update value x_i*(t) for the given noise draw.
double raw_update(std::size_t i, const OpinionState& state, const ModelConfig& config,
                  double noise);

// One synchronous step: every mobile agent reads x(t), writes x(t+1).
// Noise is drawn in ascending agent-index order.
OpinionState step(const OpinionState& state, const ModelConfig& config, Rng& rng);

// Initial state at t = 0. When x0 is absent, mobile opinions are sampled
// i.i.d. uniform on per-agent intervals (default [0,1]), consuming the rng
// before any dynamics noise.
OpinionState initial_state(const ModelConfig& config, const std::optional<std::vector<double>>& x0,
                           Rng& rng,
                           const std::vector<std::pair<double, double>>& intervals = {});

Trajectory run_trajectory(const ModelConfig& config, const std::optional<std::vector<double>>& x0,
                          std::size_t horizon, SeedStream seed);

}  // namespace hk
