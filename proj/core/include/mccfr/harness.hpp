#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mccfr/baseline.hpp"
#include "mccfr/config.hpp"
#include "mccfr/diagnostics.hpp"
#include "mccfr/game.hpp"
#include "mccfr/net.hpp"
#include "mccfr/regret_table.hpp"
#include "mccfr/replay.hpp"
#include "mccfr/rng.hpp"
#include "mccfr/training.hpp"

namespace mccfr {

std::unique_ptr<Game> make_game(const std::string& domain);

// One self-play learner: tabular regret store plus the three networks
// (strategy f, sampler g, variance V) with optional frozen copies of f and g.
// Each step() samples one terminal history with the sampler, applies the
// outcome-sampling updates, pushes the visited decision points into the replay
// buffer, trains every tau_train steps, and refreshes the frozen copies every
// tau_target steps.
class Engine {
 public:
  Engine(const Game& game, const RunConfig& cfg);

  void step();
  std::int64_t iteration() const { return t_; }

  const Game& game() const { return game_; }
  const RunConfig& config() const { return cfg_; }
  const RegretTable& table() const { return table_; }
  const BaselineTable& baseline() const { return baseline_; }
  const ReplayBuffer& replay() const { return buffer_; }
  const TrainReport& last_train_report() const { return last_report_; }
  DiagnosticTracker& tracker() { return tracker_; }

  const ResidualNet& strategy_net() const { return f_; }
  const ResidualNet& sampling_net() const { return g_; }
  const ResidualNet& variance_net() const { return v_; }
  const ResidualNet& strategy_target() const { return f_target_; }
  const ResidualNet& sampling_target() const { return g_target_; }

  StrategyProfile average_profile() const;
  StrategyProfile current_profile() const;

  // Policy of `net` on every enumerated decision point, in enumeration order.
  std::vector<std::vector<double>> policy_predictions(const ResidualNet& net) const;

  // Recomputes exact best-response values for the average and the current
  // strategy and caches them; snapshot() reports the cached values.
  void evaluate_exploitability();
  double last_exploitability_avg() const { return exploit_avg_; }
  double last_exploitability_current() const { return exploit_current_; }

  DiagnosticSnapshot snapshot();

 private:
  std::vector<double> sampler_dist(const InfoSetKey& key, std::span<const Action> legal) const;
  std::vector<double> target_dist(const InfoSetKey& key, std::span<const Action> legal) const;

  const Game& game_;
  RunConfig cfg_;
  std::vector<std::pair<InfoSetKey, std::vector<Action>>> infosets_;
  RegretTable table_;
  BaselineTable baseline_;
  ResidualNet f_, g_, v_;
  ResidualNet f_target_, g_target_;
  Adam opt_f_, opt_g_, opt_v_;
  ReplayBuffer buffer_;
  Rng deal_rng_, act_rng_, replay_rng_;
  DiagnosticTracker tracker_;
  TrainReport last_report_;
  std::int64_t t_ = 0;
  double exploit_avg_ = 0.0;
  double exploit_current_ = 0.0;
};

struct RunResult {
  std::string domain;
  std::string preset;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  double final_exploitability_avg = 0.0;
  double final_exploitability_current = 0.0;
  double wall_clock_seconds = 0.0;
};

// Runs one configuration end to end. When cfg.out_dir is non-empty, writes
// metrics.csv (fixed-cadence diagnostics; deterministic given seed+config),
// summary.csv (adds wall-clock time), config.txt, avg_strategy.txt and the
// three network checkpoints f.net/g.net/v.net. `log` gets a short progress
// line per evaluation when non-null.
RunResult run(const RunConfig& cfg, std::ostream* log = nullptr);

struct AblationEntry {
  std::string preset;
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_exploitability;  // per seed, average strategy
  double mean_exploitability = 0.0;
  double min_exploitability = 0.0;
  double max_exploitability = 0.0;
  double mean_seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct AblationSummary {
  std::vector<AblationEntry> entries;
};

// All seven presets x all seeds. A failing run marks its preset failed and
// the suite continues. Writes <out_dir>/ablation.csv and ablation.txt plus one
// run directory per (preset, seed) when out_dir is non-empty.
AblationSummary run_ablation_suite(const std::string& domain,
                                   std::span<const std::uint64_t> seeds,
                                   std::int64_t iterations,
                                   const std::string& out_dir,
                                   const RunConfig& base = RunConfig{},
                                   std::ostream* log = nullptr);

std::string format_ablation_table(const AblationSummary& summary);

struct SweepPoint {
  double value = 0.0;
  RunResult result;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;
};

// One full-preset run per parameter value (parameter is "epsilon",
// "tau_target" or "lambda"; empty values -> a default grid). Writes
// <out_dir>/sweep.csv plus per-value run directories when out_dir is non-empty.
SweepResult run_sensitivity_sweep(const std::string& domain,
                                  const std::string& parameter,
                                  std::vector<double> values,
                                  std::uint64_t seed,
                                  std::int64_t iterations,
                                  const std::string& out_dir,
                                  const RunConfig& base = RunConfig{},
                                  std::ostream* log = nullptr);

struct CheckpointEval {
  double exploitability_avg_strategy = 0.0;
  double exploitability_strategy_net = 0.0;
};

// Re-evaluates a finished run directory: exact exploitability of the saved
// average strategy and of the policy implied by the saved strategy network.
CheckpointEval evaluate_checkpoint(const std::string& domain, const std::string& run_dir);

}  // namespace mccfr
