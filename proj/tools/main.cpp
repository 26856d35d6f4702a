#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gambench/config.hpp"
#include "gambench/dataset.hpp"
#include "gambench/metrics.hpp"
#include "gambench/report.hpp"
#include "gambench/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAgent = 3;

struct CommonOpts {
  std::string config_path;
  std::string data_dir;
  std::string out_path;
  std::string format = "all";
  std::int64_t seed_override = -1;
  bool quiet = false;
};

int run_or_simulate(const CommonOpts& opts, bool force_simulant) {
  gambench::RunConfig config = gambench::parse_config(opts.config_path);
  if (force_simulant) config.agent.backend = gambench::AgentBackend::Simulant;
  if (!opts.out_path.empty()) config.output_dir = opts.out_path;
  if (opts.seed_override >= 0) config.run_seed = static_cast<std::uint64_t>(opts.seed_override);
  if (config.output_dir.empty()) {
    throw gambench::ConfigError("no output directory: set output_dir in the config or pass --out");
  }

  gambench::BatchResult result = gambench::run_batch(config);
  if (!opts.quiet) {
    std::cout << "dataset: " << result.output_dir.string() << "\n"
              << "sessions run: " << result.sessions_run
              << ", skipped (already complete): " << result.sessions_skipped
              << ", aborted: " << result.sessions_aborted << "\n";
  }
  return result.sessions_aborted > 0 ? kExitAgent : kExitOk;
}

int analyze_cmd(const CommonOpts& opts) {
  gambench::Dataset ds = gambench::load_dataset(opts.data_dir);
  gambench::metrics::AnalysisReport report = gambench::metrics::analyze(ds);
  std::string out = opts.out_path.empty() ? opts.data_dir + "/analysis" : opts.out_path;
  gambench::emit_analysis(report, gambench::report_format_from_string(opts.format), out);
  if (!opts.quiet) std::cout << "analysis written to " << out << "\n";
  return kExitOk;
}

int sbi_cmd(const CommonOpts& opts) {
  gambench::Dataset ds = gambench::load_dataset(opts.data_dir);
  gambench::metrics::SbiReport report = gambench::metrics::sbi(ds);
  std::string out = opts.out_path.empty() ? opts.data_dir + "/analysis" : opts.out_path;
  gambench::emit_sbi(report, out);
  if (!opts.quiet) {
    std::cout << gambench::sbi_to_json(report) << "\n";
    std::cout << "sbi written to " << out << "/sbi.json\n";
  }
  return kExitOk;
}

int report_cmd(const CommonOpts& opts) {
  gambench::Dataset ds = gambench::load_dataset(opts.data_dir);
  gambench::metrics::AnalysisReport analysis = gambench::metrics::analyze(ds);
  gambench::metrics::SbiReport sbi = gambench::metrics::sbi(ds);
  std::string out = opts.out_path.empty() ? opts.data_dir + "/analysis" : opts.out_path;
  gambench::emit_report(analysis, sbi, gambench::report_format_from_string(opts.format), out);
  if (!opts.quiet) std::cout << "report written to " << out << "\n";
  return kExitOk;
}

int validate_cmd(const CommonOpts& opts) {
  gambench::Dataset ds = gambench::load_dataset(opts.data_dir);
  std::vector<std::string> problems = gambench::validate_dataset(ds);
  if (problems.empty()) {
    if (!opts.quiet) {
      std::cout << "dataset ok: " << ds.rounds.size() << " rounds, " << ds.summaries.size()
                << " sessions\n";
    }
    return kExitOk;
  }
  for (const std::string& p : problems) std::cerr << "invalid: " << p << "\n";
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persona-conditioned slot-machine benchmark harness"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto add_common = [&](CLI::App* cmd, bool needs_config, bool needs_data) {
    if (needs_config) {
      cmd->add_option("--config", opts.config_path, "run configuration file")->required();
    }
    if (needs_data) {
      cmd->add_option("--data", opts.data_dir, "dataset directory")->required();
    }
    cmd->add_option("--out", opts.out_path, "output directory");
    cmd->add_option("--seed", opts.seed_override, "override the run seed");
    cmd->add_option("--format", opts.format, "report format: json, csv, md, all")
        ->check(CLI::IsMember({"json", "csv", "md", "all"}));
    cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
  };

  CLI::App* run = app.add_subcommand("run", "execute a batch against a remote chat endpoint");
  add_common(run, true, false);
  CLI::App* simulate =
      app.add_subcommand("simulate", "execute a batch with scripted agents (no network)");
  add_common(simulate, true, false);
  CLI::App* analyze = app.add_subcommand("analyze", "compute the analysis battery for a dataset");
  add_common(analyze, false, true);
  CLI::App* sbi = app.add_subcommand("sbi", "compute the Socioeconomic Behavioral Index");
  add_common(sbi, false, true);
  CLI::App* report = app.add_subcommand("report", "emit the full analysis + SBI bundle");
  add_common(report, false, true);
  CLI::App* validate = app.add_subcommand("validate", "schema-check an existing dataset");
  add_common(validate, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return run_or_simulate(opts, false);
    if (simulate->parsed()) return run_or_simulate(opts, true);
    if (analyze->parsed()) return analyze_cmd(opts);
    if (sbi->parsed()) return sbi_cmd(opts);
    if (report->parsed()) return report_cmd(opts);
    if (validate->parsed()) return validate_cmd(opts);
  } catch (const gambench::AuthError& e) {
    std::cerr << "agent error: " << e.what() << "\n";
    return kExitAgent;
  } catch (const gambench::AgentUnavailable& e) {
    std::cerr << "agent error: " << e.what() << "\n";
    return kExitAgent;
  } catch (const gambench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitData;
  } catch (const gambench::DatasetError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
