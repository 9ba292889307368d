#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hk {

// max - min of the subset's opinion values. Throws ConfigError on an empty
// subset or an out-of-range index.
double diameter(std::span<const double> values, std::span<const std::size_t> subset);

// max over the subset of |x_i - anchor|.
double anchored_deviation(std::span<const double> values, std::span<const std::size_t> subset,
                          double anchor);

struct ConsensusReport {
    double phi = 0.0;
    std::optional<std::size_t> entry_time;  // earliest T with series[t] <= phi for all t >= T
    bool confirmed = false;                 // entry found and horizon - T >= min_tail
    std::size_t tail_margin = 0;            // horizon - entry_time when entry exists
};

// Finite-horizon entry time: the verdict is "confirmed" only when the bound
// holds through a tail of at least min_tail steps.
ConsensusReport consensus_entry(std::span<const double> series, double phi, std::size_t min_tail);

// Sort the opinions and cut at every gap exceeding epsilon; returns groups of
// original indices, ordered by opinion value. Equivalent to connected
// components of the epsilon-interval graph.
std::vector<std::vector<std::size_t>> cluster_partition(std::span<const double> values,
                                                        double epsilon);

std::size_t cluster_count(std::span<const double> values, double epsilon);

// Finite-horizon limsup surrogate: maximum of the last tail_window entries.
double limsup_estimate(std::span<const double> series, std::size_t tail_window);

// Running means g(k) = (z_1 + ... + z_k) / k. For a monotone input the
// output is monotone the same way.
std::vector<double> running_means(std::span<const double> values);

}  // namespace hk
