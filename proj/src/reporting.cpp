#include "oulab/reporting.hpp"

#include <array>
#include <charconv>
#include <ctime>
#include <fstream>
#include <map>
#include <stdexcept>

namespace oulab {

std::string format_shortest(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_shortest: conversion failed");
  return std::string(buffer.data(), ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string content_digest(std::string_view bytes) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xF];
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write_file_atomic: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json identity_report_to_json(const IdentityReport& report) {
  return nlohmann::json{{"identity", report.identity_name},
                        {"statement", identity_statement(report.identity_name)},
                        {"max_abs_residual", report.max_abs_residual},
                        {"max_rel_residual", report.max_rel_residual},
                        {"nodes_checked", report.nodes_checked},
                        {"tolerance", report.tolerance},
                        {"pass", report.pass}};
}

std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records) {
  std::string csv = "t,mass,entropy,fisher,bound,ratio\n";
  for (const TrajectoryRecord& rec : records) {
    csv += format_shortest(rec.t);
    csv += ',';
    csv += format_shortest(rec.mass);
    csv += ',';
    csv += format_shortest(rec.entropy);
    csv += ',';
    csv += format_shortest(rec.fisher);
    csv += ',';
    csv += format_shortest(rec.bound);
    csv += ',';
    csv += format_shortest(rec.ratio);
    csv += '\n';
  }
  return csv;
}

std::string identity_statement(std::string_view identity_name) {
  static const std::map<std::string_view, std::string_view> statements = {
      {"weitzenbock", "L(|∇F|²) = 2⟨∇F, ∇LF⟩ + 2|∇F|² + 2‖∇²F‖²"},
      {"bochner-entropy",
       "(L − ∂ₜ)(|∇u_t|²/u_t) = (2/u_t)|∇u_t|² + (2/u_t)‖∇²u_t − ∇u_t⊗∇u_t/u_t‖²"},
      {"bochner-dt-fd",
       "analytic ∂ₜ(|∇u_t|²/u_t) matches a central finite difference in t"},
      {"integration-by-parts", "∫(LF)G dγ = −∫⟨∇F, ∇G⟩ dγ"},
      {"semigroup-symmetry", "∫ u·P_t v dγ = ∫ v·P_t u dγ"},
      {"contraction", "‖P_t u‖_p ≤ ‖u‖_p"},
      {"projection-commutation",
       "conditional expectation onto the first k coordinates commutes with P_t"},
      {"semigroup-law", "P_s P_t = P_{s+t}"},
      {"generator-composition", "L = −δ∘∇, spectral and direct forms agreeing"},
      {"gradient-commutation", "∇P_t F = e^{−t} P_t ∇F"},
      {"mass-invariance", "∫ P_t u dγ = ∫ u dγ"},
      {"backend-agreement",
       "spectral and Mehler-quadrature semigroups agree on polynomials"},
      {"entropy-production", "d/dt Ent(u_t) = −∫(log u_t) L u_t dγ = ∫ |∇u_t|²/u_t dγ"},
      {"decay-bound", "∫ |∇u_t|²/u_t dγ ≤ e^{−2t} ∫ |∇u_0|²/u_0 dγ"},
      {"entropy-bound", "Ent(u) ≤ 1 − ∫ u dγ"},
      {"interchange", "d/dt ∫ u_t log u_t dγ = ∫ [(log u_t) L u_t + L u_t] dγ"},
      {"fisher-right-continuity",
       "t ↦ ∫ |∇u_t|²/u_t dγ is right-continuous at t = 0 (sampled at small t)"},
  };
  const auto it = statements.find(identity_name);
  return it == statements.end() ? std::string(identity_name) : std::string(it->second);
}

nlohmann::json make_manifest(const nlohmann::json& config_echo, std::uint64_t seed,
                             const std::vector<ManifestEntry>& files) {
  nlohmann::json entries = nlohmann::json::array();
  for (const ManifestEntry& f : files) {
    entries.push_back({{"path", f.path}, {"digest", f.digest}});
  }
  char stamp[32] = {};
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return nlohmann::json{{"version", std::string(kArtifactVersion)},
                        {"seed", seed},
                        {"timestamp", stamp},
                        {"config", config_echo},
                        {"files", entries}};
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "NO"; }

// Table cells must not contain raw pipes.
std::string escape_cell(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void append_verify_section(std::string& md, const nlohmann::json& report) {
  md += "| check | statement | max rel residual | tolerance | pass |\n";
  md += "|---|---|---|---|---|\n";
  for (const nlohmann::json& check : report.at("checks")) {
    md += "| " + check.at("identity").get<std::string>();
    md += " | " + escape_cell(check.at("statement").get<std::string>());
    md += " | " + format_shortest(check.at("max_rel_residual").get<double>());
    md += " | " + format_shortest(check.at("tolerance").get<double>());
    md += " | " + yes_no(check.at("pass").get<bool>()) + " |\n";
  }
  md += "\n";
}

void append_evolve_section(std::string& md, const nlohmann::json& summary) {
  md += "- initial density: " + summary.at("initial").get<std::string>() + "\n";
  md += "- dimension: " + std::to_string(summary.at("dimension").get<int>()) + "\n";
  md += "- time points: " + std::to_string(summary.at("time_points").get<int>()) + "\n";
  const nlohmann::json& exponent = summary.at("fitted_exponent");
  md += "- fitted decay exponent: " +
        (exponent.is_null() ? std::string("undefined (fisher = 0)")
                            : format_shortest(exponent.get<double>())) +
        "\n";
  md += "- worst decay-bound margin: " +
        format_shortest(summary.at("worst_bound_margin").get<double>()) + "\n";
  md += "- mass conserved: " + yes_no(summary.at("mass_conserved").get<bool>()) + "\n";
  md += "- entropy non-decreasing: " + yes_no(summary.at("entropy_monotone").get<bool>()) + "\n";
  md += "- fisher non-increasing: " + yes_no(summary.at("fisher_monotone").get<bool>()) + "\n";
  for (const char* key : {"decay_bound", "entropy_production", "interchange"}) {
    if (summary.contains(key) && !summary.at(key).is_null()) {
      const nlohmann::json& check = summary.at(key);
      md += std::string("- ") + key + ": " + yes_no(check.at("pass").get<bool>()) +
            " (max rel residual " +
            format_shortest(check.at("max_rel_residual").get<double>()) + ", " +
            check.at("statement").get<std::string>() + ")\n";
    }
  }
  md += "- all pass: " + yes_no(summary.at("all_pass").get<bool>()) + "\n\n";
}

}  // namespace

std::string merge_reports_markdown(const std::vector<nlohmann::json>& inputs) {
  std::string md = "# ou-lab run report\n\n";
  int verify_count = 0;
  int evolve_count = 0;
  for (const nlohmann::json& input : inputs) {
    if (input.contains("checks")) {
      md += "## Identity suite " + std::to_string(++verify_count) + " (seed " +
            std::to_string(input.at("seed").get<std::uint64_t>()) + ")\n\n";
      append_verify_section(md, input);
    } else if (input.contains("records") || input.contains("initial")) {
      md += "## Evolution run " + std::to_string(++evolve_count) + "\n\n";
      append_evolve_section(md, input);
    } else {
      throw std::runtime_error("merge_reports_markdown: unrecognized report shape");
    }
  }
  return md;
}

}  // namespace oulab
