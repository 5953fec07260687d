#include "soficlab/cli.hpp"

#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "soficlab/cayley.hpp"
#include "soficlab/lab.hpp"

namespace soficlab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::string levels_csv;
  bool quiet = false;
  CLI::Option* seed_option = nullptr;
  CLI::Option* levels_option = nullptr;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_path, "experiment configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", opts.out_path, "output JSON path (default: <id>.json)");
  opts.seed_option = sub->add_option("--seed", opts.seed, "override the configured seed");
  opts.levels_option =
      sub->add_option("--levels", opts.levels_csv, "override levels (comma-separated degrees)");
  sub->add_flag("--quiet", opts.quiet, "suppress per-level summary lines");
}

ExperimentConfig resolve_config(const CommonOptions& opts) {
  ExperimentConfig cfg = load_config(opts.config_path);
  if (opts.seed_option && opts.seed_option->count() > 0) cfg.seed = opts.seed;
  if (opts.levels_option && opts.levels_option->count() > 0) {
    cfg.levels.clear();
    std::istringstream in(opts.levels_csv);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      try {
        const long long d = std::stoll(item);
        if (d < 1) throw std::out_of_range("level");
        cfg.levels.push_back(static_cast<std::uint32_t>(d));
      } catch (const std::exception&) {
        throw ConfigError("--levels: bad degree '" + item + "'");
      }
    }
    if (cfg.levels.empty()) throw ConfigError("--levels: no degrees given");
  }
  validate_config(cfg);
  return cfg;
}

void require_action(const ExperimentConfig& cfg, Action expected, const std::string& subcommand) {
  if (cfg.action != expected) {
    throw ConfigError("subcommand '" + subcommand + "' needs action " + action_name(expected) +
                      ", but the config declares " + action_name(cfg.action));
  }
}

void print_summary(const DimensionReport& report, bool quiet) {
  if (quiet) return;
  if (report.rungs.empty()) return;
  const RungReport& rung = report.rungs.back();
  for (const auto& level : rung.levels) {
    std::printf("[%s] level %u: pass %.4f", report.config.id.c_str(), level.degree,
                level.pass_fraction);
    if (!level.eps_records.empty()) {
      const auto& rec = level.eps_records.front();
      std::printf("  bracket [%s, %s]", rec.normalized.lower_fraction.c_str(),
                  rec.normalized.upper_fraction.c_str());
    }
    std::printf("\n");
  }
  std::printf("[%s] bracket [%.6f, %.6f]\n", report.config.id.c_str(), report.summary_lower,
              report.summary_upper);
}

int run_and_write(const DimensionReport& report, const CommonOptions& opts) {
  const std::string out = opts.out_path.empty() ? report.config.id + ".json" : opts.out_path;
  write_report_files(report, out);
  print_summary(report, opts.quiet);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"sofic dimension laboratory"};
  app.require_subcommand(1);

  CommonOptions check_opts, eps_opts, betti_opts, schatten_opts, dimexp_opts;
  CLI::App* check = app.add_subcommand("sofic-check", "level defect statistics");
  add_common(check, check_opts);
  CLI::App* epsdim = app.add_subcommand("epsdim", "regular-module dimension bracket");
  add_common(epsdim, eps_opts);
  CLI::App* betti = app.add_subcommand("betti", "first-cohomology bracket");
  add_common(betti, betti_opts);
  CLI::App* schatten = app.add_subcommand("schatten", "Schatten-model bracket");
  add_common(schatten, schatten_opts);
  CLI::App* dimexp = app.add_subcommand("dimexp", "run the config's declared action");
  add_common(dimexp, dimexp_opts);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("soficdim");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      return run_and_write(run_sofic_check(resolve_config(check_opts)), check_opts);
    }
    if (epsdim->parsed()) {
      ExperimentConfig cfg = resolve_config(eps_opts);
      require_action(cfg, Action::RegularLp, "epsdim");
      return run_and_write(run_lp_dimension(cfg), eps_opts);
    }
    if (betti->parsed()) {
      ExperimentConfig cfg = resolve_config(betti_opts);
      require_action(cfg, Action::Betti, "betti");
      return run_and_write(run_betti(cfg), betti_opts);
    }
    if (schatten->parsed()) {
      ExperimentConfig cfg = resolve_config(schatten_opts);
      require_action(cfg, Action::SchattenRegular, "schatten");
      return run_and_write(run_schatten(cfg), schatten_opts);
    }
    if (dimexp->parsed()) {
      return run_and_write(run_experiment(resolve_config(dimexp_opts)), dimexp_opts);
    }
    std::fprintf(stderr, "no subcommand given\n");
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "capacity error: %s\n", e.what());
    return kExitRuntime;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "convergence error: %s\n", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}

}  // namespace soficlab
