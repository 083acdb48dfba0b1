// Machine-readable outputs: trajectory CSV, structured JSON reports, run
// manifests with content digests, and the merged human-readable summary.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oulab/experiments.hpp"

namespace oulab {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

/// Shortest decimal representation that round-trips the double exactly.
std::string format_shortest(double value);

std::uint64_t fnv1a64(std::string_view bytes);
/// "fnv1a64:<16 hex digits>" over the file contents.
std::string content_digest(std::string_view bytes);

/// Write-temp-then-rename so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

nlohmann::json identity_report_to_json(const IdentityReport& report);

/// Header t,mass,entropy,fisher,bound,ratio; one row per record.
std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records);

/// The mathematical statement a named check verifies, for summaries.
std::string identity_statement(std::string_view identity_name);

struct ManifestEntry {
  std::string path;    // relative to the manifest's directory
  std::string digest;  // content_digest of the bytes written
};

nlohmann::json make_manifest(const nlohmann::json& config_echo, std::uint64_t seed,
                             const std::vector<ManifestEntry>& files);

/// Merge verify reports and evolve summaries (as parsed JSON) into one
/// markdown document. Deterministic: identical inputs give identical bytes.
std::string merge_reports_markdown(const std::vector<nlohmann::json>& inputs);

}  // namespace oulab
