#include "hk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hk/errors.hpp"

namespace hk {

double diameter(std::span<const double> values, std::span<const std::size_t> subset) {
    if (subset.empty()) throw ConfigError("diameter: subset must be nonempty");
    double lo = 2.0, hi = -1.0;
    for (std::size_t i : subset) {
        if (i >= values.size()) throw ConfigError("diameter: index out of range");
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
    return hi - lo;
}

double anchored_deviation(std::span<const double> values, std::span<const std::size_t> subset,
                          double anchor) {
    if (subset.empty()) throw ConfigError("anchored_deviation: subset must be nonempty");
    double worst = 0.0;
    for (std::size_t i : subset) {
        if (i >= values.size()) throw ConfigError("anchored_deviation: index out of range");
        worst = std::max(worst, std::abs(values[i] - anchor));
    }
    return worst;
}

ConsensusReport consensus_entry(std::span<const double> series, double phi,
                                std::size_t min_tail) {
    if (series.empty()) throw ConfigError("consensus_entry: series must be nonempty");
    ConsensusReport rep;
    rep.phi = phi;
    // Scan backwards: entry is the step after the last exceedance.
    std::size_t entry = 0;
    for (std::size_t k = series.size(); k-- > 0;) {
        if (series[k] > phi) {
            entry = k + 1;
            break;
        }
    }
    if (entry >= series.size()) return rep;  // never enters within the horizon
    rep.entry_time = entry;
    rep.tail_margin = series.size() - 1 - entry;
    rep.confirmed = rep.tail_margin >= min_tail;
    return rep;
}

std::vector<std::vector<std::size_t>> cluster_partition(std::span<const double> values,
                                                        double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("cluster_partition: epsilon must be > 0");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || values[order[k]] - values[order[k - 1]] > epsilon) groups.emplace_back();
        groups.back().push_back(order[k]);
    }
    return groups;
}

std::size_t cluster_count(std::span<const double> values, double epsilon) {
    return cluster_partition(values, epsilon).size();
}

double limsup_estimate(std::span<const double> series, std::size_t tail_window) {
    if (tail_window == 0) throw ConfigError("limsup_estimate: tail_window must be >= 1");
    if (tail_window > series.size())
        throw ConfigError("limsup_estimate: tail_window exceeds series length");
    double worst = series[series.size() - tail_window];
    for (std::size_t k = series.size() - tail_window; k < series.size(); ++k)
        worst = std::max(worst, series[k]);
    return worst;
}

std::vector<double> running_means(std::span<const double> values) {
    std::vector<double> out;
    out.reserve(values.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        sum += values[k];
        out.push_back(sum / static_cast<double>(k + 1));
    }
    return out;
}

}  // namespace hk
