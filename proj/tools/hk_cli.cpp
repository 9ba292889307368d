#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hk/dynamics.hpp"
#include "hk/errors.hpp"
#include "hk/harness.hpp"
#include "hk/report_io.hpp"

namespace fs = std::filesystem;

namespace {

// Flag values shared by the subcommands; validated by ModelConfig /
// ExperimentSpec before anything runs.
struct Flags {
    std::string model = "plain";
    std::size_t n = 10;
    double epsilon = 0.2;
    double delta = 0.0;
    std::string noise = "uniform";
    double sigma = 0.0;
    double atom = 0.0;
    double alpha = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    std::size_t s1_size = 0;
    double b1 = 0.0;
    double b2 = 0.0;
    std::size_t b1_count = 1;
    std::size_t b2_count = 1;
    std::size_t steps = 20000;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::size_t tail = 4000;
    std::size_t min_tail = 4000;
    std::string theorem;
    bool override_hypothesis = false;
    std::string out = "runs";
    std::vector<std::string> formats = {"csv", "json", "text"};
    unsigned threads = 0;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--model", f.model,
                    "model variant: plain|homo-prejudice|homo-stubborn|hetero-prejudice|"
                    "hetero-stubborn");
    cmd->add_option("--n", f.n, "mobile agent count");
    cmd->add_option("--epsilon", f.epsilon, "confidence bound, in (0,1]");
    cmd->add_option("--delta", f.delta, "noise bound delta >= 0");
    cmd->add_option("--noise", f.noise, "noise family: uniform|tgauss|rademacher|zero");
    cmd->add_option("--sigma", f.sigma, "tgauss pre-truncation standard deviation");
    cmd->add_option("--atom", f.atom, "rademacher atom magnitude, in (0,delta]");
    cmd->add_option("--alpha", f.alpha, "prejudice attraction strength, in (0,1]");
    cmd->add_option("--j1", f.j1, "prejudice value J1");
    cmd->add_option("--j2", f.j2, "prejudice value J2");
    cmd->add_option("--s1-size", f.s1_size, "size of prejudice group S1 (agents 0..s1-1)");
    cmd->add_option("--b1", f.b1, "stubborn anchor value B1");
    cmd->add_option("--b2", f.b2, "stubborn anchor value B2");
    cmd->add_option("--b1-count", f.b1_count, "stubborn agent count at B1");
    cmd->add_option("--b2-count", f.b2_count, "stubborn agent count at B2");
}

hk::NoiseModel make_noise(const Flags& f) {
    const auto family = hk::noise_family_from_string(f.noise);
    switch (family) {
        case hk::NoiseFamily::Zero: return hk::NoiseModel::zero();
        case hk::NoiseFamily::Uniform: return hk::NoiseModel::uniform(f.delta);
        case hk::NoiseFamily::TruncatedGaussian:
            return hk::NoiseModel::truncated_gaussian(f.delta,
                                                      f.sigma > 0.0 ? f.sigma : f.delta / 2.0);
        case hk::NoiseFamily::ScaledRademacher:
            return hk::NoiseModel::scaled_rademacher(f.delta, f.atom > 0.0 ? f.atom : f.delta);
    }
    return hk::NoiseModel::zero();
}

hk::ModelConfig make_config(const Flags& f) {
    hk::ModelConfig c;
    c.variant = hk::variant_from_string(f.model);
    c.n = f.n;
    c.epsilon = f.epsilon;
    c.noise = make_noise(f);
    if (c.is_prejudice_variant()) {
        c.alpha = f.alpha;
        c.j1 = f.j1;
        for (std::size_t i = 0; i < f.s1_size; ++i) c.s1_members.push_back(i);
        if (c.variant == hk::Variant::HeteroPrejudice) {
            c.j2 = f.j2;
            for (std::size_t i = f.s1_size; i < f.n; ++i) c.s2_members.push_back(i);
        }
    }
    if (c.is_stubborn_variant()) {
        c.b1_value = f.b1;
        c.b1_count = f.b1_count;
        if (c.variant == hk::Variant::HeteroStubborn) {
            c.b2_value = f.b2;
            c.b2_count = f.b2_count;
        }
    }
    c.validate();
    return c;
}

bool wants(const Flags& f, const std::string& fmt) {
    for (const auto& s : f.formats) {
        if (s == fmt) return true;
    }
    return false;
}

void write_effective_config(const hk::ModelConfig& config, const Flags& f, const fs::path& dir) {
    nlohmann::ordered_json j;
    j["config"] = hk::config_to_json(config);
    j["steps"] = f.steps;
    j["reps"] = f.reps;
    j["seed"] = f.seed;
    j["tail"] = f.tail;
    j["min_tail"] = f.min_tail;
    if (!f.theorem.empty()) j["theorem"] = f.theorem;
    j["override_hypothesis"] = f.override_hypothesis;
    hk::write_file(dir / "effective_config.json", j.dump(2) + "\n");
}

int cmd_simulate(const Flags& f) {
    const hk::ModelConfig config = make_config(f);
    const fs::path dir(f.out);
    fs::create_directories(dir);
    const auto traj = hk::run_trajectory(config, std::nullopt, f.steps, {f.seed, 0});
    hk::emit_trajectory_csv(traj, config, hk::default_anchors(config), dir / "trajectory.csv");
    write_effective_config(config, f, dir);
    std::cout << "wrote " << (dir / "trajectory.csv").string() << " (" << traj.size()
              << " rows)\n";
    return 0;
}

hk::ExperimentSpec make_preset(const Flags& f) {
    if (f.theorem == "1a")
        return hk::preset_theorem1a(f.n, f.epsilon, f.delta, f.reps, f.steps, f.seed,
                                    f.override_hypothesis);
    if (f.theorem == "1b")
        return hk::preset_homo_prejudice(f.n, f.epsilon, f.delta, f.alpha, f.j1, f.s1_size,
                                         f.reps, f.steps, f.seed);
    if (f.theorem == "1c")
        return hk::preset_theorem1c(f.n, f.epsilon, f.delta, f.b1, f.b1_count, f.reps, f.steps,
                                    f.seed, f.override_hypothesis);
    if (f.theorem == "2")
        return hk::preset_theorem2(f.n, f.epsilon, f.delta, f.alpha, f.j1, f.j2, f.s1_size,
                                   f.reps, f.steps, f.seed, f.override_hypothesis);
    if (f.theorem == "3")
        return hk::preset_theorem3(f.n, f.epsilon, f.delta, f.alpha, f.j1, f.j2, f.s1_size,
                                   f.reps, f.steps, f.seed, f.override_hypothesis);
    if (f.theorem == "4i")
        return hk::preset_theorem4(hk::Theorem4Case::I, f.n, f.epsilon, f.delta, f.b1, f.b2,
                                   f.b1_count, f.b2_count, 0, f.reps, f.steps, f.seed,
                                   f.override_hypothesis);
    if (f.theorem == "4ii")
        return hk::preset_theorem4(hk::Theorem4Case::II, f.n, f.epsilon, f.delta, f.b1, f.b2,
                                   f.b1_count, f.b2_count, f.s1_size, f.reps, f.steps, f.seed,
                                   f.override_hypothesis);
    throw hk::ConfigError("unknown theorem preset '" + f.theorem +
                          "' (expected 1a|1b|1c|2|3|4i|4ii)");
}

int emit_ensemble(const hk::ExperimentSpec& spec, const Flags& f) {
    const fs::path dir(f.out);
    fs::create_directories(dir);
    const auto report = hk::run_ensemble(spec, f.threads);
    if (wants(f, "json")) hk::emit_report_json(report, dir / "report.json");
    if (wants(f, "text")) hk::emit_report_text(report, dir / "report.txt");
    write_effective_config(spec.config, f, dir);
    std::cout << hk::report_to_text(report);
    return report.passed ? 0 : 1;
}

int cmd_verify(Flags& f) {
    hk::ExperimentSpec spec = make_preset(f);
    spec.tail_window = f.tail;
    spec.min_tail = f.min_tail;
    spec.validate();
    return emit_ensemble(spec, f);
}

int cmd_baseline(const Flags& f) {
    Flags nf = f;
    nf.noise = "zero";
    nf.delta = 0.0;
    const auto spec = hk::preset_noise_free_baseline(make_config(nf), f.reps, f.steps, f.seed);
    return emit_ensemble(spec, nf);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noisy bounded-confidence opinion dynamics simulator and ensemble verifier"};
    app.require_subcommand(1);
    app.set_config("--config");

    Flags f;
    auto* sim = app.add_subcommand("simulate", "run one trajectory and emit a CSV");
    auto* ver = app.add_subcommand("verify", "run a theorem preset ensemble and emit a report");
    auto* base = app.add_subcommand("baseline", "run a noise-free ensemble (fixed points, clusters)");

    for (auto* cmd : {sim, ver, base}) {
        add_model_flags(cmd, f);
        cmd->add_option("--steps", f.steps, "trajectory horizon in steps");
        cmd->add_option("--seed", f.seed, "master seed");
        cmd->add_option("--out", f.out, "output directory");
        cmd->add_option("--format", f.formats, "output formats: csv,json,text")->delimiter(',');
    }
    for (auto* cmd : {ver, base}) {
        cmd->add_option("--reps", f.reps, "replication count");
        cmd->add_option("--threads", f.threads, "replication parallelism (0 = auto)");
    }
    ver->add_option("--theorem", f.theorem, "preset: 1a|1b|1c|2|3|4i|4ii")->required();
    ver->add_option("--tail", f.tail, "tail window for limsup estimates");
    ver->add_option("--min-tail", f.min_tail, "minimum confirming tail for entry verdicts");
    ver->add_flag("--override-hypothesis", f.override_hypothesis,
                  "run even when parameters violate the preset's hypothesis (flagged in report)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(f);
        if (ver->parsed()) return cmd_verify(f);
        if (base->parsed()) return cmd_baseline(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
