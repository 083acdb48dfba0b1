// ou-lab command line: run the identity suite or an evolution experiment from
// a JSON config, or merge existing reports into one summary.
//
// Exit status: 0 all checks pass, 1 a mathematical check failed,
// 2 configuration or environment error.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "oulab/suite.hpp"

namespace {

using oulab::ConfigError;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  double tolerance_scale = 1.0;
  bool tolerance_scale_set = false;
};

std::string resolve_out_dir(const CommonOptions& opts, const nlohmann::json& root) {
  if (opts.out_dir) return *opts.out_dir;
  if (const auto configured = oulab::config_out_dir(root)) return *configured;
  return ".";
}

void print_check_line(const oulab::IdentityReport& r) {
  std::printf("[%s] %-24s max rel residual %.3e  (tolerance %.1e, %lld comparisons)\n",
              r.pass ? "PASS" : "FAIL", r.identity_name.c_str(), r.max_rel_residual, r.tolerance,
              static_cast<long long>(r.nodes_checked));
}

oulab::ManifestEntry write_output(const std::filesystem::path& dir, const std::string& name,
                                  const std::string& content) {
  oulab::write_file_atomic(dir / name, content);
  return {name, oulab::content_digest(content)};
}

int run_verify(const CommonOptions& opts) {
  const nlohmann::json root = oulab::load_config_file(opts.config_path);
  oulab::VerifyConfig cfg = oulab::parse_verify_config(root, oulab::node_budget_from_env());
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.tolerance_scale_set) cfg.tolerance_scale = opts.tolerance_scale;

  const oulab::VerifyOutcome outcome = oulab::run_verify_suite(cfg);
  for (const oulab::IdentityReport& r : outcome.reports) print_check_line(r);

  const std::filesystem::path dir = resolve_out_dir(opts, root);
  std::vector<oulab::ManifestEntry> files;
  files.push_back(write_output(dir, "verify_report.json", outcome.to_json().dump(2) + "\n"));
  const nlohmann::json manifest = oulab::make_manifest(root, cfg.seed, files);
  oulab::write_file_atomic(dir / "verify_manifest.json", manifest.dump(2) + "\n");

  std::printf("%s: report written to %s\n", outcome.all_pass() ? "ok" : "FAILED",
              (dir / "verify_report.json").c_str());
  return outcome.all_pass() ? 0 : 1;
}

int run_evolve(const CommonOptions& opts) {
  const nlohmann::json root = oulab::load_config_file(opts.config_path);
  oulab::EvolveConfig cfg = oulab::parse_evolve_config(root, oulab::node_budget_from_env());
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.tolerance_scale_set) cfg.tolerance_scale = opts.tolerance_scale;

  const oulab::EvolveOutcome outcome = oulab::run_evolve(cfg);

  std::printf("evolved %s (n = %d) over %zu time points\n", outcome.initial_label.c_str(),
              outcome.dimension, outcome.records.size());
  if (outcome.fitted_exponent) {
    std::printf("fitted decay exponent: %.6f\n", *outcome.fitted_exponent);
  } else {
    std::printf("fitted decay exponent: undefined (fisher = 0)\n");
  }
  print_check_line(outcome.decay_bound);
  if (outcome.entropy_production) print_check_line(*outcome.entropy_production);
  if (outcome.interchange) print_check_line(*outcome.interchange);
  std::printf("[%s] mass conserved; [%s] entropy non-decreasing; [%s] fisher non-increasing\n",
              outcome.mass_conserved ? "PASS" : "FAIL",
              outcome.entropy_monotone ? "PASS" : "FAIL",
              outcome.fisher_monotone ? "PASS" : "FAIL");

  const std::filesystem::path dir = resolve_out_dir(opts, root);
  std::vector<oulab::ManifestEntry> files;
  files.push_back(write_output(dir, "trajectory.csv", oulab::trajectory_to_csv(outcome.records)));
  files.push_back(write_output(dir, "evolve_summary.json", outcome.to_json().dump(2) + "\n"));
  const nlohmann::json manifest = oulab::make_manifest(root, cfg.seed, files);
  oulab::write_file_atomic(dir / "evolve_manifest.json", manifest.dump(2) + "\n");

  std::printf("%s: trajectory written to %s\n", outcome.all_pass() ? "ok" : "FAILED",
              (dir / "trajectory.csv").c_str());
  return outcome.all_pass() ? 0 : 1;
}

int run_report(const std::vector<std::string>& inputs, const CommonOptions& opts) {
  std::vector<nlohmann::json> parsed;
  for (const std::string& path : inputs) {
    parsed.push_back(oulab::load_config_file(path));
  }
  std::string md;
  try {
    md = oulab::merge_reports_markdown(parsed);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }

  const std::filesystem::path dir = opts.out_dir.value_or(".");
  std::vector<oulab::ManifestEntry> files;
  files.push_back(write_output(dir, "report.md", md));
  const nlohmann::json manifest =
      oulab::make_manifest(nlohmann::json(inputs), opts.seed.value_or(oulab::kDefaultSeed), files);
  oulab::write_file_atomic(dir / "report_manifest.json", manifest.dump(2) + "\n");

  std::cout << md;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ou-lab: Ornstein-Uhlenbeck calculus on Hermite chaos, with a verification suite"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::vector<std::string> report_inputs;

  const auto add_common = [&](CLI::App* cmd, bool with_config) {
    if (with_config) {
      cmd->add_option("config", opts.config_path, "JSON config file")->required();
    }
    cmd->add_option("--seed", [&opts](const std::vector<std::string>& v) {
         try {
           opts.seed = std::stoull(v.at(0));
         } catch (const std::exception&) {
           return false;
         }
         return true;
       },
       "Override the config seed");
    cmd->add_option("--out", [&opts](const std::vector<std::string>& v) {
         opts.out_dir = v.at(0);
         return true;
       },
       "Output directory (overrides the config)");
    cmd->add_option("--tolerance-scale", [&opts](const std::vector<std::string>& v) {
         try {
           opts.tolerance_scale = std::stod(v.at(0));
         } catch (const std::exception&) {
           return false;
         }
         opts.tolerance_scale_set = true;
         return true;
       },
       "Multiply every check tolerance by this factor");
  };

  CLI::App* verify = app.add_subcommand("verify", "Run the configured identity suite");
  add_common(verify, true);
  CLI::App* evolve = app.add_subcommand("evolve", "Run the configured evolution experiment");
  add_common(evolve, true);
  CLI::App* report = app.add_subcommand("report", "Merge verify/evolve reports into a summary");
  report->add_option("inputs", report_inputs, "Report files to merge")->required();
  add_common(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(opts);
    if (evolve->parsed()) return run_evolve(opts);
    return run_report(report_inputs, opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const oulab::NodeBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const oulab::PositivityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
