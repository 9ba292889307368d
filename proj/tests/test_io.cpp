#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "hk/dynamics.hpp"
#include "hk/harness.hpp"
#include "hk/metrics.hpp"
#include "hk/report_io.hpp"

using namespace hk;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "hk_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("trajectory CSV: horizon 0 yields one data row") {
    ModelConfig c;
    c.variant = Variant::PlainNoisy;
    c.n = 3;
    c.epsilon = 0.2;
    c.noise = NoiseModel::zero();
    const auto traj = run_trajectory(c, std::vector<double>{0.1, 0.5, 0.9}, 0, {0, 0});
    const auto path = temp_dir() / "h0.csv";
    emit_trajectory_csv(traj, c, default_anchors(c), path);
    const auto lines = split(slurp(path), '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "t,agent_0,agent_1,agent_2,d_V,clusters");
    CHECK(lines[1].substr(0, 2) == "0,");
}

TEST_CASE("trajectory CSV round-trips doubles and d_V recomputes exactly") {
    ModelConfig c;
    c.variant = Variant::HomoStubborn;
    c.n = 5;
    c.epsilon = 0.2;
    c.noise = NoiseModel::uniform(0.01);
    c.b1_value = 0.5;
    c.b1_count = 1;
    const auto traj = run_trajectory(c, std::nullopt, 50, {21, 0});
    const auto path = temp_dir() / "rt.csv";
    emit_trajectory_csv(traj, c, default_anchors(c), path);

    const auto lines = split(slurp(path), '\n');
    const auto header = split(lines[0], ',');
    CHECK(header[0] == "t");
    CHECK(header[6] == "stubborn_0");
    CHECK(header[7] == "d_V");
    CHECK(header[8] == "d_anchor_B1");
    CHECK(header[9] == "clusters");

    std::vector<std::size_t> all(c.n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t row = 1; row < lines.size() && !lines[row].empty(); ++row) {
        const auto cells = split(lines[row], ',');
        std::vector<double> mobile;
        for (std::size_t k = 1; k <= c.n; ++k) mobile.push_back(std::strtod(cells[k].c_str(), nullptr));
        // Parsed doubles must match the trajectory bit-for-bit (17 sig digits)
        CHECK(mobile == traj[row - 1].mobile);
        const double dv = std::strtod(cells[7].c_str(), nullptr);
        CHECK(dv == diameter(mobile, all));
        const double danchor = std::strtod(cells[8].c_str(), nullptr);
        CHECK(danchor == anchored_deviation(mobile, all, 0.5));
        CHECK(std::stoul(cells[9]) == cluster_count(mobile, c.epsilon));
    }
}

TEST_CASE("report serialization is deterministic byte-for-byte") {
    const auto spec = preset_theorem1a(5, 0.3, 0.05, 4, 600, 3);
    const auto report = run_ensemble(spec, 2);
    const auto a = temp_dir() / "rep_a.json";
    const auto b = temp_dir() / "rep_b.json";
    emit_report_json(report, a);
    emit_report_json(report, b);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("text report renders pass fractions at fixed precision") {
    ExperimentReport report;
    report.spec = preset_theorem1a(5, 0.3, 0.05, 100, 600, 3);
    report.pass_fraction = 0.97;
    CheckAggregate agg;
    agg.label = "2delta-consensus";
    agg.bound = 0.1;
    agg.pass_fraction = 0.97;
    report.aggregates.push_back(agg);
    const auto text = report_to_text(report);
    CHECK(text.find("pass_fraction=0.97") != std::string::npos);
}

TEST_CASE("empty-check report renders header only") {
    ExperimentReport report;
    report.spec.label = "empty";
    report.spec.config.variant = Variant::PlainNoisy;
    report.spec.config.n = 1;
    report.spec.config.epsilon = 0.5;
    report.spec.config.noise = NoiseModel::zero();
    const auto text = report_to_text(report);
    CHECK(text.find("experiment: empty") != std::string::npos);
    CHECK(text.find("check ") == std::string::npos);
}
