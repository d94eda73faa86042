#include "mccfr/trajectory.hpp"

#include <cmath>

#include "mccfr/check.hpp"

namespace mccfr {

std::vector<double> mix_exploration(std::span<const double> dist, double eps) {
  MCCFR_CHECK(!dist.empty());
  MCCFR_CHECK_MSG(eps >= 0.0 && eps <= 1.0, "exploration " << eps << " outside [0,1]");
  const double u = 1.0 / static_cast<double>(dist.size());
  std::vector<double> mixed(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    mixed[i] = (1.0 - eps) * dist[i] + eps * u;
  }
  return mixed;
}

double importance_weight(const Trajectory& traj) {
  double w = 1.0;
  for (const TrajectoryStep& s : traj.steps) w *= s.target_prob / s.sample_prob;
  return w;
}

Trajectory sample_trajectory(const Game& game, const PolicyLookup& sampler,
                             const PolicyLookup& target, double exploration, Rng& deal_rng,
                             Rng& act_rng) {
  Trajectory traj;
  GameState state = game.initial_state();

  while (!state.is_terminal()) {
    if (state.is_chance()) {
      const std::vector<ChanceOutcome> outcomes = game.chance_outcomes(state);
      std::vector<double> probs(outcomes.size());
      for (std::size_t i = 0; i < outcomes.size(); ++i) probs[i] = outcomes[i].prob;
      const int pick = deal_rng.index(probs);

      TrajectoryStep step;
      step.player = kChance;
      step.action = pick;
      step.arity = static_cast<int>(outcomes.size());
      step.sample_prob = probs[pick];
      step.target_prob = probs[pick];
      traj.steps.push_back(step);

      traj.sample_reach *= probs[pick];
      traj.target_reach *= probs[pick];
      traj.chance_reach *= probs[pick];
      state = outcomes[pick].state;
      continue;
    }

    const std::vector<Action> legal = game.legal_actions(state);
    const InfoSetKey key = game.infoset_key(state);
    const std::vector<double> base = sampler(key, legal);
    MCCFR_CHECK_MSG(base.size() == legal.size(), "sampler arity mismatch at " << key.str());
    const std::vector<double> mixed = mix_exploration(base, exploration);
    const std::vector<double> target_dist = target(key, legal);
    MCCFR_CHECK_MSG(target_dist.size() == legal.size(),
                    "target arity mismatch at " << key.str());

    const int pick = act_rng.index(mixed);
    MCCFR_CHECK_MSG(mixed[pick] > 0.0, "sampled an action with zero sampling probability");

    TrajectoryStep step;
    step.key = key;
    step.player = state.to_act;
    step.action = legal[pick];
    step.action_index = pick;
    step.arity = static_cast<int>(legal.size());
    step.sample_prob = mixed[pick];
    step.target_prob = target_dist[pick];
    traj.steps.push_back(step);

    traj.sample_reach *= step.sample_prob;
    traj.target_reach *= step.target_prob;
    traj.player_target_reach[state.to_act] *= step.target_prob;
    state = game.apply(state, legal[pick]);
  }

  traj.terminal = state;
  traj.utility = {game.utility(state, 0), game.utility(state, 1)};
  return traj;
}

}  // namespace mccfr
