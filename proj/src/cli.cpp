#include "delopt/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "delopt/errors.hpp"
#include "delopt/harness.hpp"

namespace delopt {

namespace {

struct CommonOptions {
  int horizon = 1000;
  int dim = 10;
  double radius = 1.0;
  double inner_radius = 0.0;  // 0 means "same as radius"
  double beta = 2.0;
  double alpha = 2.0;
  double lipschitz = 0.0;  // 0 means "use 2R + sqrt(dim)"
  std::string schedule = "unit";
  std::uint64_t seed = 1;
  double delta = 0.0;
  std::string delta_rule;
};

struct CommonFlags {
  CLI::Option* delta = nullptr;
  CLI::Option* delta_rule = nullptr;
};

CommonFlags add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-T,--T,--horizon", o.horizon, "Number of rounds")
      ->capture_default_str();
  cmd->add_option("-n,--dim", o.dim, "Decision dimension")->capture_default_str();
  cmd->add_option("--radius", o.radius, "Radius of the decision ball")
      ->capture_default_str();
  cmd->add_option("--inner-radius", o.inner_radius,
                  "Radius r of a ball known to fit inside the decision set "
                  "(default: the decision radius)");
  cmd->add_option("--beta", o.beta, "Strong convexity modulus of each loss")
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Smoothness modulus of each loss")
      ->capture_default_str();
  cmd->add_option("--lipschitz", o.lipschitz,
                  "Lipschitz constant (default: 2*radius + sqrt(dim))");
  cmd->add_option("--schedule", o.schedule,
                  "Delay schedule: unit, constant:<d>, periodic:<d1,d2,...>, "
                  "or a path to a file with one delay per line")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for losses and learner randomness")
      ->capture_default_str();
  CommonFlags flags;
  flags.delta = cmd->add_option(
      "--delta", o.delta, "Fixed probe radius for the bandit algorithms");
  flags.delta_rule = cmd->add_option(
      "--delta-rule", o.delta_rule,
      "Probe radius rule: lnT_over_T, lnT_over_T:<c>, or inv_T_plus_D");
  flags.delta->excludes(flags.delta_rule);
  return flags;
}

DeltaRule parse_delta_rule(const std::string& text) {
  if (text == "inv_T_plus_D") return DeltaRule::inv_t_plus_d();
  if (text == "lnT_over_T") return DeltaRule::ln_t_over_t();
  if (text.rfind("lnT_over_T:", 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string tail = text.substr(11);
      const double c = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
      return DeltaRule::ln_t_over_t(c);
    } catch (const std::exception&) {
      throw ParameterError("bad coefficient in delta rule '" + text + "'");
    }
  }
  throw ParameterError("unrecognized delta rule '" + text +
                       "' (expected lnT_over_T, lnT_over_T:<c> or inv_T_plus_D)");
}

ScheduleSpec make_schedule_spec(const std::string& text) {
  ScheduleSpec spec;
  spec.pattern = text;
  const bool inline_pattern = text == "unit" ||
                              text.rfind("constant:", 0) == 0 ||
                              text.rfind("periodic:", 0) == 0;
  if (!inline_pattern) spec.explicit_delays = read_delay_lines(text);
  return spec;
}

Algorithm algorithm_or_throw(const std::string& name) {
  const std::optional<Algorithm> algo = parse_algorithm(name);
  if (!algo)
    throw ParameterError(
        "unknown algorithm '" + name +
        "' (expected ogd_sc, dogd, dogd_sc, bdogd_sc, twopoint or dbgd)");
  return *algo;
}

ExperimentConfig make_config(const CommonOptions& o, const CommonFlags& flags,
                             Algorithm algorithm, std::string output_path) {
  ExperimentConfig config;
  config.algorithm = algorithm;
  config.horizon = o.horizon;
  config.dim = o.dim;
  config.radius = o.radius;
  config.inner_radius = o.inner_radius > 0.0 ? o.inner_radius : o.radius;
  config.beta = o.beta;
  config.alpha = o.alpha;
  if (o.lipschitz > 0.0) config.lipschitz = o.lipschitz;
  config.schedule = make_schedule_spec(o.schedule);
  config.seed = o.seed;
  if (flags.delta->count() > 0)
    config.delta_rule = DeltaRule::fixed(o.delta);
  else if (flags.delta_rule->count() > 0)
    config.delta_rule = parse_delta_rule(o.delta_rule);
  // Otherwise the per-algorithm default applies when params are resolved.
  config.output_path = std::move(output_path);
  return config;
}

void print_summary_line(const ExperimentConfig& config,
                        const RegretLedger& ledger) {
  std::printf("%-10s T=%d seed=%llu final_cum_loss=%.6f final_regret=%.6f",
              algorithm_name(config.algorithm), config.horizon,
              static_cast<unsigned long long>(config.seed),
              ledger.final_cumulative_loss(), ledger.final_regret());
  if (!config.output_path.empty())
    std::printf(" csv=%s", config.output_path.c_str());
  std::printf("\n");
}

int do_run(const ExperimentConfig& config) {
  const RegretLedger ledger = run_experiment(config);
  if (!config.output_path.empty()) write_csv(ledger, config.output_path);
  print_summary_line(config, ledger);
  return 0;
}

int do_compare(const CommonOptions& o, const CommonFlags& flags,
               const std::vector<std::string>& names,
               const std::string& out_dir) {
  if (names.empty())
    throw ParameterError("compare needs at least one algorithm");

  std::vector<ExperimentConfig> configs;
  configs.reserve(names.size());
  for (const std::string& name : names) {
    const Algorithm algorithm = algorithm_or_throw(name);
    std::string path;
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
    }
    configs.push_back(make_config(o, flags, algorithm, std::move(path)));
  }

  // Runs are independent: shared nothing, so they can go wide.
  std::vector<std::future<RegretLedger>> futures;
  futures.reserve(configs.size());
  for (const ExperimentConfig& config : configs)
    futures.push_back(std::async(std::launch::async,
                                 [&config] { return run_experiment(config); }));

  std::printf("%-10s %18s %16s\n", "algorithm", "final_cum_loss", "final_regret");
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const RegretLedger ledger = futures[i].get();
    if (!configs[i].output_path.empty()) write_csv(ledger, configs[i].output_path);
    std::printf("%-10s %18.6f %16.6f", names[i].c_str(),
                ledger.final_cumulative_loss(), ledger.final_regret());
    if (!configs[i].output_path.empty())
      std::printf("  %s", configs[i].output_path.c_str());
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Online strongly convex optimization under unknown feedback delays"};
  app.require_subcommand(1);

  CommonOptions run_options;
  std::string run_algorithm;
  std::string run_output;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "Run one algorithm and report its cumulative loss and regret");
  run_cmd->add_option("--algo", run_algorithm,
                      "Algorithm: ogd_sc, dogd, dogd_sc, bdogd_sc, twopoint or dbgd")
      ->required();
  const CommonFlags run_flags = add_common(run_cmd, run_options);
  run_cmd->add_option("--out", run_output, "Per-round CSV output path");

  CommonOptions compare_options;
  std::vector<std::string> compare_algorithms;
  std::string compare_out_dir;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Run several algorithms on the same losses and delays");
  compare_cmd->add_option("--algos", compare_algorithms,
                          "Comma separated list of algorithms")
      ->required()
      ->delimiter(',');
  const CommonFlags compare_flags = add_common(compare_cmd, compare_options);
  compare_cmd->add_option("--out-dir", compare_out_dir,
                          "Directory for one <algorithm>.csv per run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run_cmd->parsed())
      return do_run(make_config(run_options, run_flags,
                                algorithm_or_throw(run_algorithm), run_output));
    return do_compare(compare_options, compare_flags, compare_algorithms,
                      compare_out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("delopt");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace delopt
