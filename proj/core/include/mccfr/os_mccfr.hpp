#pragma once

#include <functional>

#include "mccfr/baseline.hpp"
#include "mccfr/game.hpp"
#include "mccfr/regret_table.hpp"
#include "mccfr/trajectory.hpp"

namespace mccfr {

// Quantities computed for one decision step while applying a trajectory,
// exposed to observers (e.g. for filling a replay buffer). All values are
// taken before the step's table row is mutated.
struct StepUpdate {
  const TrajectoryStep* step = nullptr;
  std::span<const Action> legal;
  std::span<const double> target_dist;  // target profile at the step's infoset
  double sampled_action_value = 0.0;    // importance-weighted estimate of the
                                        // sampled action's counterfactual value
  double sampled_weighted_regret = 0.0; // weighted regret increment of the
                                        // sampled action, before any baseline
  double trajectory_weight = 0.0;       // W for the whole trajectory
};

using StepObserver = std::function<void(const StepUpdate&)>;

// Applies one sampled terminal trajectory to the tables, outcome-sampling
// style: every decision step updates the acting player's regrets from the
// importance-weighted terminal utility, and accumulates average-strategy
// weight scaled by own-target over sampling reach. With a baseline table the
// regret increments get the control-variate correction -b*(W-1) and the
// per-action baselines take an EMA step. Returns the trajectory weight W.
double apply_outcome_updates(const Game& game, RegretTable& table, const Trajectory& traj,
                             const PolicyLookup& target, BaselineTable* baseline,
                             double baseline_rho, const StepObserver* observer = nullptr);

// One iteration of tabular outcome-sampling MCCFR: sample a trajectory with
// the exploration-mixed current regret-matching strategy (for both players),
// then apply it.
double tabular_os_iteration(const Game& game, RegretTable& table, double exploration,
                            Rng& deal_rng, Rng& act_rng, BaselineTable* baseline = nullptr,
                            double baseline_rho = 0.05);

}  // namespace mccfr
