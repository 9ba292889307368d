#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/model.hpp"

namespace hk {

enum class Subset { V, S1, S2, V1, V2 };
enum class CheckMode { Diameter, Anchored };

// How a check's bound is judged against a replication:
//   TailMax        — max of the metric over the trailing window must be <= bound
//   ConfirmedEntry — the metric must enter and stay <= bound, with at least
//                    min_tail steps of confirming tail
//   Descriptive    — tail max is reported but no bound is asserted
enum class CheckEval { TailMax, ConfirmedEntry, Descriptive };

std::string to_string(Subset s);
std::string to_string(CheckMode m);
std::string to_string(CheckEval e);

struct BoundCheck {
    Subset subset = Subset::V;
    CheckMode mode = CheckMode::Diameter;
    double anchor = 0.0;  // Anchored mode only
    double bound = 0.0;   // the threshold phi
    CheckEval eval = CheckEval::TailMax;
    std::string label;
};

struct ExperimentSpec {
    ModelConfig config;
    std::size_t replications = 1;
    std::size_t horizon = 20000;
    std::size_t min_tail = 4000;
    std::size_t tail_window = 4000;
    std::vector<BoundCheck> checks;
    std::uint64_t master_seed = 0;
    double pass_threshold = 0.95;  // ensemble passes when this fraction of reps pass
    bool track_fixed_point = false;
    bool out_of_hypothesis = false;  // built under --override-hypothesis
    std::string label;
    std::vector<std::string> notes;

    // Per-agent initial sampling intervals; empty means U[0,1] for everyone.
    std::vector<std::pair<double, double>> init_intervals;

    // Alternatively, a union of intervals applied to every agent: a component
    // is chosen with probability proportional to its length, then the value
    // is drawn uniformly inside it. Ignored when init_intervals is set.
    std::vector<std::pair<double, double>> init_union;

    // Index groups backing Subset::V1 / Subset::V2.
    std::vector<std::size_t> group_one;
    std::vector<std::size_t> group_two;

    void validate() const;  // throws ConfigError listing each violation
    std::vector<std::size_t> resolve_subset(Subset s) const;
};

struct CheckResult {
    double tail_max = 0.0;
    std::optional<std::size_t> entry_time;
    bool confirmed = false;
    bool passed = false;
};

struct ReplicationResult {
    std::size_t index = 0;
    std::vector<CheckResult> checks;
    std::size_t clusters_at_horizon = 0;  // epsilon-gap rule at the final step
    // Modal epsilon-gap cluster count over the trailing window; more stable
    // than the single-step snapshot under noise.
    std::size_t tail_modal_clusters = 0;
    // Groups of distinct coexisting opinion values at the final step (tiny
    // gap threshold). At a noise-free fixed point this counts the separate
    // opinion levels even when they sit within epsilon of each other.
    std::size_t value_groups_at_horizon = 0;
    std::optional<std::size_t> fixed_point_step;
    bool all_passed = true;
};

struct CheckAggregate {
    std::string label;
    double bound = 0.0;
    double pass_fraction = 0.0;
    double worst_tail_max = 0.0;
    std::optional<std::size_t> entry_min, entry_median, entry_max;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<ReplicationResult> replications;
    std::vector<CheckAggregate> aggregates;
    double pass_fraction = 0.0;  // fraction of replications passing every check
    bool passed = false;         // pass_fraction >= spec.pass_threshold
};

// Runs `spec.replications` independent trajectories (in parallel across up
// to `threads` workers; 0 = hardware concurrency) and evaluates every check.
// Identical (spec, master_seed) yields an identical report.
ExperimentReport run_ensemble(const ExperimentSpec& spec, unsigned threads = 0);

// ---- Theorem presets -------------------------------------------------------
// Each builder validates its theorem's hypothesis exactly (open/closed
// endpoints as stated) and throws HypothesisError showing both sides of any
// violated inequality. With override_hypothesis the spec is built anyway and
// flagged as out-of-hypothesis exploration.

ExperimentSpec preset_theorem1a(std::size_t n, double epsilon, double delta,
                                std::size_t replications, std::size_t horizon,
                                std::uint64_t seed, bool override_hypothesis = false);

ExperimentSpec preset_theorem1c(std::size_t n, double epsilon, double delta, double b1_value,
                                std::size_t b1_count, std::size_t replications,
                                std::size_t horizon, std::uint64_t seed,
                                bool override_hypothesis = false);

ExperimentSpec preset_theorem2(std::size_t n, double epsilon, double delta, double alpha,
                               double j1, double j2, std::size_t s1_size,
                               std::size_t replications, std::size_t horizon,
                               std::uint64_t seed, bool override_hypothesis = false);

ExperimentSpec preset_theorem3(std::size_t n, double epsilon, double delta, double alpha,
                               double j1, double j2, std::size_t s1_size,
                               std::size_t replications, std::size_t horizon,
                               std::uint64_t seed, bool override_hypothesis = false);

enum class Theorem4Case { I, II };

ExperimentSpec preset_theorem4(Theorem4Case which, std::size_t n, double epsilon, double delta,
                               double b1, double b2, std::size_t b1_count, std::size_t b2_count,
                               std::size_t v1_size, std::size_t replications,
                               std::size_t horizon, std::uint64_t seed,
                               bool override_hypothesis = false);

// Noise-free run: records the first exact fixed point and terminal clusters.
ExperimentSpec preset_noise_free_baseline(ModelConfig config, std::size_t replications,
                                          std::size_t horizon, std::uint64_t seed);

// Homogeneous-prejudice run: reports the tail max of the deviation from J1
// without asserting a closed-form bound (descriptive).
ExperimentSpec preset_homo_prejudice(std::size_t n, double epsilon, double delta, double alpha,
                                     double j1, std::size_t s1_size, std::size_t replications,
                                     std::size_t horizon, std::uint64_t seed);

// Bound arithmetic, exposed for tests.
double theorem2_bound(double epsilon, double delta, double alpha);  // ((1-a)e + d)/a
double theorem3_bound(double delta, double alpha);                  // d/a

}  // namespace hk
