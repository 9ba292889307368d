#include "hk/dynamics.hpp"

#include <cmath>

#include "hk/errors.hpp"

namespace hk {

namespace {

std::size_t pool_size(const OpinionState& state, const ModelConfig& config) {
    return config.n + (config.is_stubborn_variant() ? state.stubborn.size() : 0);
}

double participant_value(std::size_t j, const OpinionState& state, const ModelConfig& config) {
    return j < config.n ? state.mobile[j] : state.stubborn[j - config.n];
}

}  // namespace

std::vector<std::size_t> neighbor_set(std::size_t i, const OpinionState& state,
                                      const ModelConfig& config) {
    if (i >= config.n) throw ConfigError("neighbor_set: agent index out of range");
    const double xi = state.mobile[i];
    std::vector<std::size_t> out;
    const std::size_t m = pool_size(state, config);
    for (std::size_t j = 0; j < m; ++j) {
        if (std::abs(participant_value(j, state, config) - xi) <= config.epsilon)
            out.push_back(j);
    }
    return out;
}

double local_mean(std::size_t i, const OpinionState& state, const ModelConfig& config) {
    if (i >= config.n) throw ConfigError("local_mean: agent index out of range");
    const double xi = state.mobile[i];
    double sum = 0.0;
    std::size_t count = 0;
    const std::size_t m = pool_size(state, config);
    for (std::size_t j = 0; j < m; ++j) {
        const double xj = participant_value(j, state, config);
        if (std::abs(xj - xi) <= config.epsilon) {
            sum += xj;
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

double raw_update(std::size_t i, const OpinionState& state, const ModelConfig& config,
                  double noise) {
    const double mean = local_mean(i, state, config);
    if (config.is_prejudice_variant()) {
        for (std::size_t k : config.s1_members) {
            if (k == i) return (1.0 - config.alpha) * mean + config.alpha * config.j1 + noise;
        }
        if (config.variant == Variant::HeteroPrejudice) {
            for (std::size_t k : config.s2_members) {
                if (k == i) return (1.0 - config.alpha) * mean + config.alpha * config.j2 + noise;
            }
        }
    }
    return mean + noise;
}

OpinionState step(const OpinionState& state, const ModelConfig& config, Rng& rng) {
    OpinionState next;
    next.t = state.t + 1;
    next.stubborn = state.stubborn;
    next.mobile.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        const double xi = config.noise.sample(rng);
        next.mobile[i] = clamp01(raw_update(i, state, config, xi));
    }
    return next;
}

OpinionState initial_state(const ModelConfig& config, const std::optional<std::vector<double>>& x0,
                           Rng& rng, const std::vector<std::pair<double, double>>& intervals) {
    OpinionState s;
    s.t = 0;
    s.stubborn = config.stubborn_values();
    if (x0) {
        if (x0->size() != config.n) throw ConfigError("x0 length must equal n");
        for (double v : *x0) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("x0 values must lie in [0,1]");
        }
        s.mobile = *x0;
        return s;
    }
    if (!intervals.empty() && intervals.size() != config.n)
        throw ConfigError("initial intervals must be empty or length n");
    s.mobile.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        const auto [lo, hi] = intervals.empty() ? std::pair{0.0, 1.0} : intervals[i];
        s.mobile[i] = rng.uniform(lo, hi);
    }
    return s;
}

Trajectory run_trajectory(const ModelConfig& config, const std::optional<std::vector<double>>& x0,
                          std::size_t horizon, SeedStream seed) {
    config.validate();
    Rng rng(seed);
    Trajectory traj;
    traj.reserve(horizon + 1);
    traj.push_back(initial_state(config, x0, rng));
    for (std::size_t t = 0; t < horizon; ++t) traj.push_back(step(traj.back(), config, rng));
    return traj;
}

}  // namespace hk
