#include "hk/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hk/errors.hpp"
#include "hk/metrics.hpp"

namespace hk {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::pair<std::string, double>> default_anchors(const ModelConfig& config) {
    switch (config.variant) {
        case Variant::PlainNoisy: return {};
        case Variant::HomoPrejudice: return {{"J1", config.j1}};
        case Variant::HeteroPrejudice: return {{"J1", config.j1}, {"J2", config.j2}};
        case Variant::HomoStubborn: return {{"B1", config.b1_value}};
        case Variant::HeteroStubborn:
            return {{"B1", config.b1_value}, {"B2", config.b2_value}};
    }
    return {};
}

void emit_trajectory_csv(const Trajectory& trajectory, const ModelConfig& config,
                         const std::vector<std::pair<std::string, double>>& anchors,
                         const std::filesystem::path& path) {
    if (trajectory.empty()) throw ConfigError("emit_trajectory_csv: trajectory must be nonempty");

    std::vector<std::size_t> all(config.n);
    for (std::size_t i = 0; i < config.n; ++i) all[i] = i;

    std::ostringstream out;
    out << "t";
    for (std::size_t i = 0; i < config.n; ++i) out << ",agent_" << i;
    for (std::size_t k = 0; k < trajectory.front().stubborn.size(); ++k) out << ",stubborn_" << k;
    out << ",d_V";
    for (const auto& [label, anchor] : anchors) out << ",d_anchor_" << label;
    out << ",clusters\n";

    for (const auto& state : trajectory) {
        out << state.t;
        for (double v : state.mobile) out << ',' << g17(v);
        for (double v : state.stubborn) out << ',' << g17(v);
        out << ',' << g17(diameter(state.mobile, all));
        for (const auto& [label, anchor] : anchors)
            out << ',' << g17(anchored_deviation(state.mobile, all, anchor));
        out << ',' << cluster_count(state.mobile, config.epsilon) << '\n';
    }
    write_file(path, out.str());
}

nlohmann::ordered_json config_to_json(const ModelConfig& config) {
    nlohmann::ordered_json j;
    j["variant"] = to_string(config.variant);
    j["n"] = config.n;
    j["epsilon"] = config.epsilon;
    j["noise"] = {{"family", to_string(config.noise.family)}, {"delta", config.noise.delta}};
    if (config.noise.family == NoiseFamily::TruncatedGaussian)
        j["noise"]["sigma"] = config.noise.sigma;
    if (config.noise.family == NoiseFamily::ScaledRademacher)
        j["noise"]["atom"] = config.noise.atom;
    if (config.is_prejudice_variant()) {
        j["alpha"] = config.alpha;
        j["j1"] = config.j1;
        j["s1_members"] = config.s1_members;
        if (config.variant == Variant::HeteroPrejudice) {
            j["j2"] = config.j2;
            j["s2_members"] = config.s2_members;
        }
    }
    if (config.is_stubborn_variant()) {
        j["b1_value"] = config.b1_value;
        j["b1_count"] = config.b1_count;
        if (config.variant == Variant::HeteroStubborn) {
            j["b2_value"] = config.b2_value;
            j["b2_count"] = config.b2_count;
        }
    }
    return j;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    const auto& spec = report.spec;
    nlohmann::ordered_json j;
    j["label"] = spec.label;
    j["out_of_hypothesis"] = spec.out_of_hypothesis;
    j["notes"] = spec.notes;
    j["config"] = config_to_json(spec.config);
    j["replications"] = spec.replications;
    j["horizon"] = spec.horizon;
    j["min_tail"] = spec.min_tail;
    j["tail_window"] = spec.tail_window;
    j["master_seed"] = spec.master_seed;
    j["pass_threshold"] = spec.pass_threshold;

    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : spec.checks) {
        nlohmann::ordered_json cj;
        cj["label"] = c.label;
        cj["subset"] = to_string(c.subset);
        cj["mode"] = to_string(c.mode);
        if (c.mode == CheckMode::Anchored) cj["anchor"] = c.anchor;
        cj["bound"] = c.bound;
        cj["eval"] = to_string(c.eval);
        j["checks"].push_back(std::move(cj));
    }

    j["aggregates"] = nlohmann::ordered_json::array();
    for (const auto& a : report.aggregates) {
        nlohmann::ordered_json aj;
        aj["label"] = a.label;
        aj["bound"] = a.bound;
        aj["pass_fraction"] = a.pass_fraction;
        aj["worst_tail_max"] = a.worst_tail_max;
        if (a.entry_min) aj["entry_min"] = *a.entry_min;
        if (a.entry_median) aj["entry_median"] = *a.entry_median;
        if (a.entry_max) aj["entry_max"] = *a.entry_max;
        j["aggregates"].push_back(std::move(aj));
    }

    j["pass_fraction"] = report.pass_fraction;
    j["passed"] = report.passed;

    j["per_replication"] = nlohmann::ordered_json::array();
    for (const auto& r : report.replications) {
        nlohmann::ordered_json rj;
        rj["index"] = r.index;
        rj["clusters_at_horizon"] = r.clusters_at_horizon;
        rj["tail_modal_clusters"] = r.tail_modal_clusters;
        rj["value_groups_at_horizon"] = r.value_groups_at_horizon;
        if (r.fixed_point_step) rj["fixed_point_step"] = *r.fixed_point_step;
        rj["all_passed"] = r.all_passed;
        rj["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            nlohmann::ordered_json cj;
            cj["tail_max"] = c.tail_max;
            if (c.entry_time) cj["entry_time"] = *c.entry_time;
            cj["confirmed"] = c.confirmed;
            cj["passed"] = c.passed;
            rj["checks"].push_back(std::move(cj));
        }
        j["per_replication"].push_back(std::move(rj));
    }
    return j;
}

void emit_report_json(const ExperimentReport& report, const std::filesystem::path& path) {
    write_file(path, report_to_json(report).dump(2) + "\n");
}

std::string report_to_text(const ExperimentReport& report) {
    const auto& spec = report.spec;
    std::ostringstream out;
    out << "experiment: " << spec.label << "\n";
    out << "model: " << to_string(spec.config.variant) << "  n=" << spec.config.n
        << "  epsilon=" << g6(spec.config.epsilon) << "  noise="
        << to_string(spec.config.noise.family) << "  delta=" << g6(spec.config.noise.delta)
        << "\n";
    out << "replications=" << spec.replications << "  horizon=" << spec.horizon
        << "  tail_window=" << spec.tail_window << "  min_tail=" << spec.min_tail
        << "  master_seed=" << spec.master_seed << "\n";
    if (spec.out_of_hypothesis) out << "WARNING: out-of-hypothesis exploration\n";
    for (const auto& n : spec.notes) out << "note: " << n << "\n";
    for (const auto& a : report.aggregates) {
        out << "check " << a.label << ": bound=" << g6(a.bound)
            << "  pass_fraction=" << g6(a.pass_fraction)
            << "  worst_tail_max=" << g6(a.worst_tail_max);
        if (a.entry_min)
            out << "  entry(min/median/max)=" << *a.entry_min << "/" << *a.entry_median << "/"
                << *a.entry_max;
        out << "\n";
    }
    out << "overall pass_fraction=" << g6(report.pass_fraction) << "  threshold="
        << g6(spec.pass_threshold) << "  verdict=" << (report.passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

void emit_report_text(const ExperimentReport& report, const std::filesystem::path& path) {
    write_file(path, report_to_text(report));
}

}  // namespace hk
