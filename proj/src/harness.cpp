#include "hk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "hk/dynamics.hpp"
#include "hk/errors.hpp"
#include "hk/metrics.hpp"

namespace hk {

std::string to_string(Subset s) {
    switch (s) {
        case Subset::V: return "V";
        case Subset::S1: return "S1";
        case Subset::S2: return "S2";
        case Subset::V1: return "V1";
        case Subset::V2: return "V2";
    }
    return "?";
}

std::string to_string(CheckMode m) {
    return m == CheckMode::Diameter ? "diameter" : "anchored";
}

std::string to_string(CheckEval e) {
    switch (e) {
        case CheckEval::TailMax: return "tail-max";
        case CheckEval::ConfirmedEntry: return "confirmed-entry";
        case CheckEval::Descriptive: return "descriptive";
    }
    return "?";
}

std::vector<std::size_t> ExperimentSpec::resolve_subset(Subset s) const {
    switch (s) {
        case Subset::V: {
            std::vector<std::size_t> all(config.n);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        case Subset::S1: return config.s1_members;
        case Subset::S2: return config.s2_members;
        case Subset::V1: return group_one;
        case Subset::V2: return group_two;
    }
    return {};
}

void ExperimentSpec::validate() const {
    std::vector<std::string> errs;
    try {
        config.validate();
    } catch (const ConfigError& e) {
        errs.emplace_back(e.what());
    }
    if (replications < 1) errs.push_back("replications must be >= 1");
    if (horizon <= min_tail) errs.push_back("horizon must exceed min_tail");
    if (tail_window == 0 || tail_window > horizon + 1)
        errs.push_back("tail_window must lie in [1, horizon+1]");
    if (!(pass_threshold >= 0.0 && pass_threshold <= 1.0))
        errs.push_back("pass_threshold must lie in [0,1]");
    for (const auto& c : checks) {
        if (c.eval != CheckEval::Descriptive && !(c.bound >= 0.0))
            errs.push_back("check '" + c.label + "': bound must be >= 0");
        if (c.mode == CheckMode::Anchored && !(c.anchor >= 0.0 && c.anchor <= 1.0))
            errs.push_back("check '" + c.label + "': anchor must lie in [0,1]");
        if (resolve_subset(c.subset).empty())
            errs.push_back("check '" + c.label + "': subset " + hk::to_string(c.subset) +
                           " is empty or unresolvable for this config");
    }
    if (!init_intervals.empty()) {
        if (init_intervals.size() != config.n)
            errs.push_back("init_intervals must be empty or length n");
        for (const auto& [lo, hi] : init_intervals) {
            if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
                errs.push_back("init_intervals entries must be ordered subintervals of [0,1]");
                break;
            }
        }
    }
    for (const auto& [lo, hi] : init_union) {
        if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
            errs.push_back("init_union components must be nonempty subintervals of [0,1]");
            break;
        }
    }
    for (std::size_t i : group_one) {
        if (i >= config.n) errs.push_back("group_one contains an out-of-range index");
    }
    for (std::size_t i : group_two) {
        if (i >= config.n) errs.push_back("group_two contains an out-of-range index");
    }
    if (!errs.empty()) {
        std::string msg = "invalid experiment spec:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
}

namespace {

ReplicationResult run_replication(const ExperimentSpec& spec, std::size_t rep) {
    ReplicationResult out;
    out.index = rep;

    // Resolve subsets once.
    std::vector<std::vector<std::size_t>> subsets;
    subsets.reserve(spec.checks.size());
    for (const auto& c : spec.checks) subsets.push_back(spec.resolve_subset(c.subset));

    Rng rng({spec.master_seed, rep});
    OpinionState state;
    if (spec.init_intervals.empty() && !spec.init_union.empty()) {
        double total = 0.0;
        for (const auto& [lo, hi] : spec.init_union) total += hi - lo;
        std::vector<double> x0(spec.config.n);
        for (auto& v : x0) {
            double pick = rng.uniform01() * total;
            v = spec.init_union.back().second;  // guard against rounding past the last component
            for (const auto& [lo, hi] : spec.init_union) {
                if (pick <= hi - lo) {
                    v = lo + pick;
                    break;
                }
                pick -= hi - lo;
            }
            v = clamp01(v);
        }
        state = initial_state(spec.config, x0, rng);
    } else {
        state = initial_state(spec.config, std::nullopt, rng, spec.init_intervals);
    }

    std::vector<std::vector<double>> series(spec.checks.size());
    for (auto& s : series) s.reserve(spec.horizon + 1);

    auto record = [&](const OpinionState& st) {
        for (std::size_t k = 0; k < spec.checks.size(); ++k) {
            const auto& c = spec.checks[k];
            series[k].push_back(c.mode == CheckMode::Diameter
                                    ? diameter(st.mobile, subsets[k])
                                    : anchored_deviation(st.mobile, subsets[k], c.anchor));
        }
    };

    // Cluster counts over the trailing window, for the modal tally.
    const std::size_t tail_from = spec.horizon + 1 - std::min(spec.tail_window, spec.horizon + 1);
    std::vector<std::size_t> tail_counts;
    tail_counts.reserve(spec.tail_window);

    record(state);
    if (tail_from == 0) tail_counts.push_back(cluster_count(state.mobile, spec.config.epsilon));
    for (std::size_t t = 0; t < spec.horizon; ++t) {
        OpinionState next = step(state, spec.config, rng);
        if (spec.track_fixed_point && !out.fixed_point_step &&
            next.mobile == state.mobile) {
            out.fixed_point_step = t;  // x(t+1) == x(t) exactly
        }
        state = std::move(next);
        record(state);
        if (t + 1 >= tail_from)
            tail_counts.push_back(cluster_count(state.mobile, spec.config.epsilon));
    }

    out.clusters_at_horizon = cluster_count(state.mobile, spec.config.epsilon);
    out.value_groups_at_horizon = cluster_count(state.mobile, 1e-9);
    {
        std::sort(tail_counts.begin(), tail_counts.end());
        std::size_t best = tail_counts.front(), best_run = 0;
        for (std::size_t a = 0; a < tail_counts.size();) {
            std::size_t b = a;
            while (b < tail_counts.size() && tail_counts[b] == tail_counts[a]) ++b;
            if (b - a > best_run) {
                best_run = b - a;
                best = tail_counts[a];
            }
            a = b;
        }
        out.tail_modal_clusters = best;
    }

    out.checks.resize(spec.checks.size());
    for (std::size_t k = 0; k < spec.checks.size(); ++k) {
        const auto& c = spec.checks[k];
        auto& r = out.checks[k];
        r.tail_max = limsup_estimate(series[k], std::min(spec.tail_window, series[k].size()));
        switch (c.eval) {
            case CheckEval::TailMax:
                r.passed = r.tail_max <= c.bound;
                break;
            case CheckEval::ConfirmedEntry: {
                const auto rep_entry = consensus_entry(series[k], c.bound, spec.min_tail);
                r.entry_time = rep_entry.entry_time;
                r.confirmed = rep_entry.confirmed;
                r.passed = rep_entry.confirmed;
                break;
            }
            case CheckEval::Descriptive:
                r.passed = true;
                break;
        }
        out.all_passed = out.all_passed && r.passed;
    }
    if (spec.track_fixed_point && !out.fixed_point_step) out.all_passed = false;
    return out;
}

std::optional<std::size_t> median_of(std::vector<std::size_t>& v) {
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

ExperimentReport run_ensemble(const ExperimentSpec& spec, unsigned threads) {
    spec.validate();

    ExperimentReport report;
    report.spec = spec;
    report.replications.resize(spec.replications);

    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.replications)));

    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const std::size_t rep = cursor.fetch_add(1);
            if (rep >= spec.replications) return;
            report.replications[rep] = run_replication(spec, rep);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // Deterministic aggregation keyed by replication index.
    std::size_t all_pass = 0;
    for (const auto& r : report.replications) all_pass += r.all_passed ? 1 : 0;
    report.pass_fraction =
        static_cast<double>(all_pass) / static_cast<double>(spec.replications);
    report.passed = report.pass_fraction >= spec.pass_threshold;

    for (std::size_t k = 0; k < spec.checks.size(); ++k) {
        CheckAggregate agg;
        agg.label = spec.checks[k].label;
        agg.bound = spec.checks[k].bound;
        std::size_t pass = 0;
        std::vector<std::size_t> entries;
        for (const auto& r : report.replications) {
            pass += r.checks[k].passed ? 1 : 0;
            agg.worst_tail_max = std::max(agg.worst_tail_max, r.checks[k].tail_max);
            if (r.checks[k].entry_time) entries.push_back(*r.checks[k].entry_time);
        }
        agg.pass_fraction = static_cast<double>(pass) / static_cast<double>(spec.replications);
        if (!entries.empty()) {
            agg.entry_min = *std::min_element(entries.begin(), entries.end());
            agg.entry_max = *std::max_element(entries.begin(), entries.end());
            agg.entry_median = median_of(entries);
        }
        report.aggregates.push_back(std::move(agg));
    }
    return report;
}

// ---- presets ----------------------------------------------------------------

double theorem2_bound(double epsilon, double delta, double alpha) {
    return ((1.0 - alpha) * epsilon + delta) / alpha;
}

double theorem3_bound(double delta, double alpha) { return delta / alpha; }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void require_or_flag(bool ok, const std::string& message, bool override_hypothesis,
                     ExperimentSpec& spec) {
    if (ok) return;
    if (!override_hypothesis) throw HypothesisError(message);
    spec.out_of_hypothesis = true;
    spec.notes.push_back("out-of-hypothesis exploration: " + message);
}

// Default windows: the final 20% of the horizon, at least 500 steps where
// the horizon allows it.
void set_default_windows(ExperimentSpec& spec) {
    std::size_t w = std::max<std::size_t>(spec.horizon / 5, 500);
    w = std::min(w, spec.horizon);
    spec.tail_window = std::max<std::size_t>(w, 1);
    spec.min_tail = std::min(spec.tail_window, spec.horizon > 1 ? spec.horizon - 1 : 0);
}

std::vector<std::size_t> index_range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
}

}  // namespace

ExperimentSpec preset_theorem1a(std::size_t n, double epsilon, double delta,
                                std::size_t replications, std::size_t horizon,
                                std::uint64_t seed, bool override_hypothesis) {
    ExperimentSpec spec;
    spec.label = "theorem-1a";
    require_or_flag(delta > 0.0 && delta <= epsilon / 2.0,
                    "theorem 1(a) requires delta in (0, epsilon/2]: delta = " + fmt(delta) +
                        ", epsilon/2 = " + fmt(epsilon / 2.0),
                    override_hypothesis, spec);
    spec.config.variant = Variant::PlainNoisy;
    spec.config.n = n;
    spec.config.epsilon = epsilon;
    spec.config.noise = NoiseModel::uniform(delta);
    spec.replications = replications;
    spec.horizon = horizon;
    spec.master_seed = seed;
    set_default_windows(spec);
    spec.checks.push_back({Subset::V, CheckMode::Diameter, 0.0, 2.0 * delta,
                           CheckEval::ConfirmedEntry, "2delta-consensus"});
    spec.validate();
    return spec;
}

ExperimentSpec preset_theorem1c(std::size_t n, double epsilon, double delta, double b1_value,
                                std::size_t b1_count, std::size_t replications,
                                std::size_t horizon, std::uint64_t seed,
                                bool override_hypothesis) {
    ExperimentSpec spec;
    spec.label = "theorem-1c";
    const double upper = epsilon / (2.0 * static_cast<double>(n + 1));
    require_or_flag(delta > 0.0 && delta < upper,
                    "theorem 1(c) requires delta in (0, epsilon/(2(n+1))): delta = " + fmt(delta) +
                        ", epsilon/(2(n+1)) = " + fmt(upper),
                    override_hypothesis, spec);
    spec.config.variant = Variant::HomoStubborn;
    spec.config.n = n;
    spec.config.epsilon = epsilon;
    spec.config.noise = NoiseModel::uniform(delta);
    spec.config.b1_value = b1_value;
    spec.config.b1_count = b1_count;
    spec.replications = replications;
    spec.horizon = horizon;
    spec.master_seed = seed;
    set_default_windows(spec);
    spec.checks.push_back({Subset::V, CheckMode::Diameter, 0.0, 2.0 * delta, CheckEval::TailMax,
                           "2delta-consensus"});
    spec.checks.push_back({Subset::V, CheckMode::Anchored, b1_value,
                           static_cast<double>(n + 1) * delta, CheckEval::TailMax,
                           "(n+1)delta-consensus-with-B1"});
    spec.validate();
    return spec;
}

namespace {

ExperimentSpec hetero_prejudice_spec(std::size_t n, double epsilon, double delta, double alpha,
                                     double j1, double j2, std::size_t s1_size,
                                     std::size_t replications, std::size_t horizon,
                                     std::uint64_t seed) {
    if (s1_size == 0 || s1_size >= n)
        throw ConfigError("s1_size must lie in [1, n-1] so both prejudice groups are nonempty");
    ExperimentSpec spec;
    spec.config.variant = Variant::HeteroPrejudice;
    spec.config.n = n;
    spec.config.epsilon = epsilon;
    spec.config.noise = delta > 0.0 ? NoiseModel::uniform(delta) : NoiseModel::zero();
    spec.config.alpha = alpha;
    spec.config.j1 = j1;
    spec.config.j2 = j2;
    spec.config.s1_members = index_range(0, s1_size);
    spec.config.s2_members = index_range(s1_size, n);
    spec.replications = replications;
    spec.horizon = horizon;
    spec.master_seed = seed;
    set_default_windows(spec);
    return spec;
}

}  // namespace

ExperimentSpec preset_theorem2(std::size_t n, double epsilon, double delta, double alpha,
                               double j1, double j2, std::size_t s1_size,
                               std::size_t replications, std::size_t horizon,
                               std::uint64_t seed, bool override_hypothesis) {
    ExperimentSpec spec =
        hetero_prejudice_spec(n, epsilon, delta, alpha, j1, j2, s1_size, replications, horizon,
                              seed);
    spec.label = "theorem-2";
    require_or_flag(std::abs(j1 - j2) > epsilon,
                    "heterogeneous prejudices require |J1 - J2| > epsilon: |J1 - J2| = " +
                        fmt(std::abs(j1 - j2)) + ", epsilon = " + fmt(epsilon),
                    override_hypothesis, spec);
    const double bound = theorem2_bound(epsilon, delta, alpha);
    spec.checks.push_back({Subset::S1, CheckMode::Anchored, j1, bound, CheckEval::TailMax,
                           "S1-consensus-with-J1"});
    spec.checks.push_back({Subset::S2, CheckMode::Anchored, j2, bound, CheckEval::TailMax,
                           "S2-consensus-with-J2"});
    spec.validate();
    return spec;
}

ExperimentSpec preset_theorem3(std::size_t n, double epsilon, double delta, double alpha,
                               double j1, double j2, std::size_t s1_size,
                               std::size_t replications, std::size_t horizon,
                               std::uint64_t seed, bool override_hypothesis) {
    ExperimentSpec spec =
        hetero_prejudice_spec(n, epsilon, delta, alpha, j1, j2, s1_size, replications, horizon,
                              seed);
    spec.label = "theorem-3";
    const double rhs = epsilon + 2.0 * theorem2_bound(epsilon, delta, alpha);
    require_or_flag(j1 - j2 > rhs,
                    "theorem 3 requires J1 - J2 > epsilon + 2((1-alpha)epsilon+delta)/alpha: "
                    "J1 - J2 = " +
                        fmt(j1 - j2) + ", epsilon + 2((1-alpha)epsilon+delta)/alpha = " + fmt(rhs),
                    override_hypothesis, spec);
    const double bound = theorem3_bound(delta, alpha);
    spec.checks.push_back({Subset::S1, CheckMode::Anchored, j1, bound, CheckEval::TailMax,
                           "S1-consensus-with-J1"});
    spec.checks.push_back({Subset::S2, CheckMode::Anchored, j2, bound, CheckEval::TailMax,
                           "S2-consensus-with-J2"});
    spec.notes.push_back("expected terminal cluster count: 2 (bipartite cleavage)");
    spec.validate();
    return spec;
}

ExperimentSpec preset_theorem4(Theorem4Case which, std::size_t n, double epsilon, double delta,
                               double b1, double b2, std::size_t b1_count, std::size_t b2_count,
                               std::size_t v1_size, std::size_t replications,
                               std::size_t horizon, std::uint64_t seed,
                               bool override_hypothesis) {
    ExperimentSpec spec;
    spec.label = which == Theorem4Case::I ? "theorem-4i" : "theorem-4ii";
    require_or_flag(b2 - b1 > epsilon,
                    "heterogeneous stubborn agents require B2 - B1 > epsilon: B2 - B1 = " +
                        fmt(b2 - b1) + ", epsilon = " + fmt(epsilon),
                    override_hypothesis, spec);
    const double denom = which == Theorem4Case::I ? static_cast<double>(n + 1)
                                                  : 2.0 * static_cast<double>(n + 1);
    const double upper = (b2 - b1 - epsilon) / denom;
    require_or_flag(delta > 0.0 && delta < upper,
                    "theorem 4(" + std::string(which == Theorem4Case::I ? "i" : "ii") +
                        ") requires delta in (0, (B2-B1-epsilon)/" +
                        (which == Theorem4Case::I ? std::string("(n+1)") : std::string("(2(n+1))")) +
                        "): delta = " + fmt(delta) + ", upper endpoint = " + fmt(upper),
                    override_hypothesis, spec);

    spec.config.variant = Variant::HeteroStubborn;
    spec.config.n = n;
    spec.config.epsilon = epsilon;
    spec.config.noise = NoiseModel::uniform(delta);
    spec.config.b1_value = b1;
    spec.config.b2_value = b2;
    spec.config.b1_count = b1_count;
    spec.config.b2_count = b2_count;
    spec.replications = replications;
    spec.horizon = horizon;
    spec.master_seed = seed;
    set_default_windows(spec);

    if (which == Theorem4Case::I) {
        // Stated initial region: [0, B2-eps) or (B1+eps, B2]. The two
        // intervals overlap whenever B2-eps > B1+eps; we sample the literal
        // union and flag the ambiguity.
        const double a_hi = b2 - epsilon;
        const double b_lo = b1 + epsilon;
        if (b_lo < a_hi) {
            spec.init_union = {{0.0, b2}};  // the two components overlap: union is one interval
        } else {
            spec.init_union = {{0.0, a_hi}, {b_lo, b2}};
        }
        spec.notes.push_back(
            "initial region '[0,B2-eps) or (B1+eps,B2]' has components that overlap "
            "whenever B2-eps > B1+eps; the literal union is sampled");
        spec.checks.push_back({Subset::V, CheckMode::Diameter, 0.0, 2.0 * delta,
                               CheckEval::TailMax, "2delta-consensus"});
    } else {
        if (v1_size == 0 || v1_size >= n)
            throw ConfigError("v1_size must lie in [1, n-1] so both groups are nonempty");
        spec.group_one = index_range(0, v1_size);
        spec.group_two = index_range(v1_size, n);
        spec.init_intervals.assign(v1_size, {0.0, b1});
        spec.init_intervals.insert(spec.init_intervals.end(), n - v1_size,
                                   std::pair{b2, 1.0});
        spec.checks.push_back({Subset::V1, CheckMode::Diameter, 0.0, 2.0 * delta,
                               CheckEval::TailMax, "V1-2delta-consensus"});
        spec.checks.push_back({Subset::V2, CheckMode::Diameter, 0.0, 2.0 * delta,
                               CheckEval::TailMax, "V2-2delta-consensus"});
    }
    spec.validate();
    return spec;
}

ExperimentSpec preset_noise_free_baseline(ModelConfig config, std::size_t replications,
                                          std::size_t horizon, std::uint64_t seed) {
    if (config.noise.family != NoiseFamily::Zero)
        throw ConfigError("noise-free baseline requires the zero noise family");
    ExperimentSpec spec;
    spec.label = "noise-free-baseline";
    spec.config = std::move(config);
    spec.replications = replications;
    spec.horizon = horizon;
    spec.min_tail = std::min<std::size_t>(horizon / 2, 500);
    spec.tail_window = std::min<std::size_t>(horizon + 1, 500);
    spec.master_seed = seed;
    spec.track_fixed_point = true;
    spec.notes.push_back("records first exact fixed point and terminal cluster count");
    spec.validate();
    return spec;
}

ExperimentSpec preset_homo_prejudice(std::size_t n, double epsilon, double delta, double alpha,
                                     double j1, std::size_t s1_size, std::size_t replications,
                                     std::size_t horizon, std::uint64_t seed) {
    if (!(delta > 0.0)) throw HypothesisError("theorem 1(b) requires delta > 0: delta = " + fmt(delta));
    ExperimentSpec spec;
    spec.label = "theorem-1b";
    spec.config.variant = Variant::HomoPrejudice;
    spec.config.n = n;
    spec.config.epsilon = epsilon;
    spec.config.noise = NoiseModel::uniform(delta);
    spec.config.alpha = alpha;
    spec.config.j1 = j1;
    spec.config.s1_members = index_range(0, s1_size);
    spec.replications = replications;
    spec.horizon = horizon;
    spec.master_seed = seed;
    set_default_windows(spec);
    spec.checks.push_back({Subset::V, CheckMode::Anchored, j1, 0.0, CheckEval::Descriptive,
                           "deviation-from-J1"});
    spec.notes.push_back(
        "descriptive: the closed-form bound constants are external to this model family; the "
        "tail max of the deviation from J1 is reported without assertion");
    spec.validate();
    return spec;
}

}  // namespace hk
