#include <cstdint>
#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "sparsemimo/config.hpp"
#include "sparsemimo/experiment.hpp"
#include "sparsemimo/table.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run(sparsemimo::ExperimentKind kind, const CliOptions& opt) {
  sparsemimo::ScenarioConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = sparsemimo::load_config(opt.config_path, kind);
    if (cfg.kind != kind) {
      std::cerr << "error: config sets experiment '"
                << sparsemimo::to_string(cfg.kind) << "' but the '"
                << sparsemimo::to_string(kind) << "' subcommand was invoked\n";
      return 2;
    }
  } else {
    cfg.kind = kind;
    cfg.validate();
  }
  if (opt.seed_set) cfg.seed = opt.seed;

  const auto table = sparsemimo::run_experiment(cfg);
  sparsemimo::emit(table, opt.format, opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-array MIMO link-level experiment runner"};
  app.require_subcommand(1);

  CliOptions opt;
  sparsemimo::ExperimentKind picked{};
  const std::pair<sparsemimo::ExperimentKind, const char*> kinds[] = {
      {sparsemimo::ExperimentKind::EdofSweep,
       "effective degrees of freedom vs. array sparsity"},
      {sparsemimo::ExperimentKind::RateSweep,
       "single-user rate vs. array sparsity"},
      {sparsemimo::ExperimentKind::SumRateFar,
       "far-field multi-user sum rate vs. BS sparsity"},
      {sparsemimo::ExperimentKind::SumRateNear,
       "near-field multi-user sum rate vs. BS sparsity"},
      {sparsemimo::ExperimentKind::Cdf,
       "per-user rate CDF, closed form and Monte Carlo"},
      {sparsemimo::ExperimentKind::FitLobes,
       "two-lobe fit parameters vs. array sparsity"}};
  for (const auto& [kind, blurb] : kinds) {
    auto* sub = app.add_subcommand(sparsemimo::to_string(kind), blurb);
    sub->add_option("--config", opt.config_path, "scenario key=value file");
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "override the config seed")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    sub->callback([&picked, kind] { picked = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return run(picked, opt);
  } catch (const sparsemimo::ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
