// Command-line front end: run / batch / scaling / verify-lemmas.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obisect/config.hpp"
#include "obisect/csv.hpp"
#include "obisect/errors.hpp"
#include "obisect/runner.hpp"
#include "obisect/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  bool quiet = false;
};

obisect::ExperimentConfig resolve_config(const CommonArgs& args) {
  obisect::ExperimentConfig cfg;
  if (!args.config_path.empty())
    cfg = obisect::load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  if (!args.out_path.empty()) cfg.output_path = args.out_path;
  obisect::validate_config(cfg);
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

int cmd_run(const CommonArgs& args) {
  const obisect::ExperimentConfig cfg = resolve_config(args);
  obisect::RunSummary summary;
  if (!cfg.output_path.empty()) {
    std::ofstream out = open_output(cfg.output_path);
    obisect::write_csv_header(out);
    summary = obisect::run_online(cfg, [&](const obisect::RunRecord& rec) {
      obisect::write_csv_row(out, rec);
    });
    if (!out) throw std::runtime_error("write failure on '" + cfg.output_path + "'");
  } else {
    summary = obisect::run_online(cfg);
  }
  if (!args.quiet) {
    std::cout << "queries        " << summary.queries << '\n'
              << "avg_error      " << summary.avg_error << '\n'
              << "final_side     " << summary.final_side << '\n'
              << "phases         " << summary.phases << '\n'
              << "oracle_calls   " << summary.oracle_calls << '\n'
              << "contained      " << (summary.contained ? "true" : "false") << '\n'
              << "converged      " << (summary.converged ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int cmd_batch(const CommonArgs& args) {
  const obisect::ExperimentConfig cfg = resolve_config(args);
  obisect::RunSummary summary;
  const obisect::BatchReport report = obisect::run_batch(cfg, &summary);
  if (!args.quiet) {
    std::cout << "mean_abs_error  " << report.mean_abs_error << '\n'
              << "bound           " << report.bound << '\n'
              << "bound_satisfied " << (report.bound_satisfied ? "true" : "false") << '\n'
              << "final_side      " << report.final_side << '\n'
              << "converged       " << (report.converged ? "true" : "false") << '\n';
  }
  return kExitOk;
}

std::vector<std::int64_t> parse_t_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw obisect::ConfigError("--t-list: cannot parse '" + item + "'");
    }
  }
  if (out.size() < 3)
    throw obisect::ConfigError("--t-list: need at least three increasing values");
  return out;
}

int cmd_scaling(const CommonArgs& args, const std::string& t_list_text) {
  obisect::ExperimentConfig cfg = resolve_config(args);
  const std::vector<std::int64_t> t_list = parse_t_list(t_list_text);
  const obisect::ScalingReport report = obisect::run_scaling(cfg, t_list);
  if (!args.quiet) {
    for (const auto& point : report.points)
      std::cout << "T=" << point.T << "  avg_error=" << point.avg_error << '\n';
    std::cout << "slope " << report.slope << '\n';
  }
  if (!cfg.output_path.empty()) {
    std::ofstream out = open_output(cfg.output_path);
    out << "T,avg_error\n";
    char buf[64];
    for (const auto& point : report.points) {
      std::snprintf(buf, sizeof(buf), "%lld,%.17g\n",
                    static_cast<long long>(point.T), point.avg_error);
      out << buf;
    }
  }
  return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
  const std::uint64_t seed = args.seed.value_or(20240301ULL);
  const auto reports = obisect::run_all_lemma_checks(seed);
  bool all_pass = true;
  for (const auto& report : reports) {
    if (!args.quiet || !report.pass)
      std::cout << obisect::format_report(report) << '\n';
    all_pass = all_pass && report.pass;
  }
  std::cout << (all_pass ? "all checks passed" : "CHECK FAILURES PRESENT")
            << '\n';
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online reconstruction of a noise-protected database behind a binary threshold oracle"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string t_list_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "experiment config file");
    sub->add_option("--seed", args.seed, "override the experiment seed");
    sub->add_option("--out", args.out_path, "output path (overrides output_path)");
    sub->add_flag("--quiet", args.quiet, "suppress the summary printout");
  };

  CLI::App* run = app.add_subcommand("run", "online run with per-query CSV log");
  add_common(run);
  CLI::App* batch = app.add_subcommand("batch", "online run plus fresh-query evaluation");
  add_common(batch);
  CLI::App* scaling = app.add_subcommand("scaling", "error trend across stream lengths");
  add_common(scaling);
  scaling->add_option("--t-list", t_list_text, "comma-separated stream lengths")
      ->required();
  CLI::App* verify = app.add_subcommand("verify-lemmas", "statistical checks of the core bounds");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(args);
    if (batch->parsed()) return cmd_batch(args);
    if (scaling->parsed()) return cmd_scaling(args, t_list_text);
    if (verify->parsed()) return cmd_verify(args);
  } catch (const obisect::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
