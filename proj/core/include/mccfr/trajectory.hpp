#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mccfr/game.hpp"
#include "mccfr/rng.hpp"

namespace mccfr {

// Behavioral policy queried at decision points; returns a distribution over
// the legal positions (same length and order as `legal`).
using PolicyLookup =
    std::function<std::vector<double>(const InfoSetKey&, std::span<const Action>)>;

// One sampled event. Chance events are recorded as steps too (player ==
// kChance, identical probabilities under both laws) so that reach products
// over steps include chance on both sides and cancel in the weight.
struct TrajectoryStep {
  InfoSetKey key;            // decision steps only
  int player = kChance;
  Action action = -1;        // alphabet id at decisions, outcome index at chance
  int action_index = -1;     // position in the legal list (decision steps)
  int arity = 0;             // legal actions (or chance outcomes) at this step
  double sample_prob = 1.0;  // probability under the sampling law
  double target_prob = 1.0;  // probability under the target profile
};

// One root-to-terminal sample with its reach decomposition.
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::array<double, 2> utility{0.0, 0.0};
  double sample_reach = 1.0;                     // product of sample_prob, chance included
  double target_reach = 1.0;                     // product of target_prob, chance included
  std::array<double, 2> player_target_reach{1.0, 1.0};  // per-player target factors
  double chance_reach = 1.0;
  GameState terminal;
};

// (1-eps) * dist + eps * uniform. Guarantees every entry >= eps / arity.
std::vector<double> mix_exploration(std::span<const double> dist, double eps);

// Ratio of target to sampling reach for the whole trajectory. Chance factors
// appear in both reaches, so the weight is unchanged whether or not they are
// included. Equals 1 identically when sampling follows the target profile.
double importance_weight(const Trajectory& traj);

// Samples one terminal history. Both players' actions are drawn from the
// exploration-mixed sampler; chance events follow the game's chance law (drawn
// from deal_rng, actions from act_rng, so toggling one stream never perturbs
// the other). Recorded sampling probabilities are the mixed ones, i.e. the law
// actually sampled from.
Trajectory sample_trajectory(const Game& game, const PolicyLookup& sampler,
                             const PolicyLookup& target, double exploration, Rng& deal_rng,
                             Rng& act_rng);

}  // namespace mccfr
