// Command-line front end for the outcome-sampling learner: single runs,
// component-ablation suites, hyperparameter sweeps, checkpoint re-evaluation
// and infoset enumeration.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mccfr/check.hpp"
#include "mccfr/exact_eval.hpp"
#include "mccfr/harness.hpp"

namespace {

using namespace mccfr;

// True when the subcommand both defines the option and saw it on the command
// line (count() alone throws for options a subcommand does not define).
bool flag_given(const CLI::App& sub, const std::string& name) {
  const CLI::Option* opt = sub.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

// Precedence, least to most specific: built-in defaults, --config file,
// dedicated flags, --set key=value pairs.
RunConfig assemble_config(const CLI::App& sub, const std::string& config_path,
                          const std::string& domain, const std::string& preset,
                          std::uint64_t seed, std::int64_t iters, const std::string& out,
                          const std::vector<std::string>& sets) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  if (flag_given(sub, "--domain")) cfg.domain = domain;
  if (flag_given(sub, "--preset")) apply_preset(cfg, preset);
  if (flag_given(sub, "--seed")) cfg.seed = seed;
  if (flag_given(sub, "--iters")) cfg.iterations = iters;
  if (flag_given(sub, "--out")) cfg.out_dir = out;
  for (const std::string& kv : sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw Error("--set expects key=value, got '" + kv + "'");
    apply_key_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outcome-sampling regret minimization with learned sampling, "
               "strategy and variance networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string domain = "kuhn";
  std::string preset = "full";
  std::uint64_t seed = 1;
  std::int64_t iters = 0;
  std::string out_dir;
  std::vector<std::string> sets;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string parameter;
  std::vector<double> values;
  std::string run_dir;

  CLI::App* run_cmd = app.add_subcommand("run", "Train one configuration");
  run_cmd->add_option("--config", config_path, "Plain-text key = value config file");
  run_cmd->add_option("--domain", domain, "kuhn or leduc");
  run_cmd->add_option("--preset", preset, "Component preset");
  run_cmd->add_option("--seed", seed, "Master seed");
  run_cmd->add_option("--iters", iters, "Iteration count (0 = domain default)");
  run_cmd->add_option("--out", out_dir, "Output directory (omit to skip file output)");
  run_cmd->add_option("--set", sets, "Extra key=value overrides")->take_all();

  CLI::App* ablate_cmd =
      app.add_subcommand("ablate", "Run every component preset over a seed list");
  ablate_cmd->add_option("--config", config_path, "Plain-text key = value config file");
  ablate_cmd->add_option("--domain", domain, "kuhn or leduc");
  ablate_cmd->add_option("--seeds", seeds, "Seed list")->delimiter(',');
  ablate_cmd->add_option("--iters", iters, "Iteration count (0 = domain default)");
  ablate_cmd->add_option("--out", out_dir, "Output directory");
  ablate_cmd->add_option("--set", sets, "Extra key=value overrides")->take_all();

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Vary one hyperparameter around the full preset");
  sweep_cmd->add_option("--config", config_path, "Plain-text key = value config file");
  sweep_cmd->add_option("--domain", domain, "kuhn or leduc");
  sweep_cmd->add_option("--param", parameter, "epsilon, tau_target or lambda")->required();
  sweep_cmd->add_option("--values", values, "Explicit grid (default: built-in grid)")
      ->delimiter(',');
  sweep_cmd->add_option("--seed", seed, "Master seed");
  sweep_cmd->add_option("--iters", iters, "Iteration count (0 = domain default)");
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_option("--set", sets, "Extra key=value overrides")->take_all();

  CLI::App* eval_cmd = app.add_subcommand(
      "eval-checkpoint", "Exact exploitability of a finished run directory");
  eval_cmd->add_option("--domain", domain, "kuhn or leduc")->required();
  eval_cmd->add_option("--dir", run_dir, "Run directory with avg_strategy.txt and f.net")
      ->required();

  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "List every decision point of a domain");
  enum_cmd->add_option("--domain", domain, "kuhn or leduc")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const RunConfig cfg = assemble_config(*run_cmd, config_path, domain, preset, seed,
                                            iters, out_dir, sets);
      const RunResult res = run(cfg, &std::cout);
      std::cout << "final exploitability (average strategy): "
                << res.final_exploitability_avg << "\n"
                << "final exploitability (current strategy): "
                << res.final_exploitability_current << "\n"
                << "wall clock: " << res.wall_clock_seconds << " s\n";
      if (!cfg.out_dir.empty()) std::cout << "outputs in " << cfg.out_dir << "\n";
      return 0;
    }
    if (ablate_cmd->parsed()) {
      RunConfig base = assemble_config(*ablate_cmd, config_path, domain, "full", seed,
                                       iters, out_dir, sets);
      const std::string run_domain = base.domain;
      const AblationSummary summary =
          run_ablation_suite(run_domain, seeds, iters, out_dir, base, &std::cout);
      std::cout << "\n" << format_ablation_table(summary);
      for (const AblationEntry& e : summary.entries) {
        if (e.failed) return 1;
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      RunConfig base = assemble_config(*sweep_cmd, config_path, domain, "full", seed,
                                       iters, out_dir, sets);
      const SweepResult res = run_sensitivity_sweep(base.domain, parameter, values, seed,
                                                    iters, out_dir, base, &std::cout);
      std::cout << "\n" << res.parameter << "  exploitability(avg)\n";
      for (const SweepPoint& p : res.points) {
        std::cout << p.value << "  " << p.result.final_exploitability_avg << "\n";
      }
      return 0;
    }
    if (eval_cmd->parsed()) {
      const CheckpointEval ev = evaluate_checkpoint(domain, run_dir);
      std::cout << "exploitability (saved average strategy): "
                << ev.exploitability_avg_strategy << "\n"
                << "exploitability (strategy network policy): "
                << ev.exploitability_strategy_net << "\n";
      return 0;
    }
    if (enum_cmd->parsed()) {
      const std::unique_ptr<Game> game = make_game(domain);
      const auto infosets = enumerate_infosets_with_actions(*game);
      std::cout << game->name() << ": " << infosets.size() << " decision points\n";
      for (const auto& [key, legal] : infosets) {
        std::cout << key.str() << " :";
        for (const Action a : legal) std::cout << ' ' << game->action_name(a);
        std::cout << '\n';
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
