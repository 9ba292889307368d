#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hk/harness.hpp"
#include "hk/model.hpp"

#include <nlohmann/json.hpp>

namespace hk {

// Anchors worth tracking in a trajectory CSV for this variant (J1/J2 or
// B1/B2), as (label, value) pairs.
std::vector<std::pair<std::string, double>> default_anchors(const ModelConfig& config);

// CSV schema: t,agent_0..agent_{n-1},stubborn_0..,d_V,d_anchor_<label>..,clusters
// Values are printed with 17 significant digits so doubles round-trip exactly.
void emit_trajectory_csv(const Trajectory& trajectory, const ModelConfig& config,
                         const std::vector<std::pair<std::string, double>>& anchors,
                         const std::filesystem::path& path);

nlohmann::ordered_json config_to_json(const ModelConfig& config);
nlohmann::ordered_json report_to_json(const ExperimentReport& report);

void emit_report_json(const ExperimentReport& report, const std::filesystem::path& path);
void emit_report_text(const ExperimentReport& report, const std::filesystem::path& path);
std::string report_to_text(const ExperimentReport& report);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace hk
