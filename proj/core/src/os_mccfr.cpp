#include "mccfr/os_mccfr.hpp"

#include <cmath>

#include "mccfr/check.hpp"

namespace mccfr {

std::vector<double>& BaselineTable::row(const InfoSetKey& key, int arity) {
  MCCFR_CHECK(arity > 0);
  std::vector<double>& r = rows_[key];
  if (r.empty()) r.assign(arity, 0.0);
  MCCFR_CHECK(static_cast<int>(r.size()) == arity);
  return r;
}

double BaselineTable::value(const InfoSetKey& key, int action_index) const {
  auto it = rows_.find(key);
  if (it == rows_.end()) return 0.0;
  MCCFR_CHECK(action_index >= 0 && action_index < static_cast<int>(it->second.size()));
  return it->second[action_index];
}

void BaselineTable::ema_update(const InfoSetKey& key, std::span<const double> sample,
                               double rho) {
  MCCFR_CHECK(rho >= 0.0 && rho <= 1.0);
  std::vector<double>& r = row(key, static_cast<int>(sample.size()));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    r[i] = (1.0 - rho) * r[i] + rho * sample[i];
  }
}

double apply_baseline(double u, double w, double b) { return (u - b) * w + b; }

double apply_outcome_updates(const Game& game, RegretTable& table, const Trajectory& traj,
                             const PolicyLookup& target, BaselineTable* baseline,
                             double baseline_rho, const StepObserver* observer) {
  const std::size_t n = traj.steps.size();
  MCCFR_CHECK_MSG(n > 0, "empty trajectory");
  MCCFR_CHECK(traj.sample_reach > 0.0);

  // Target-reach products over step suffixes; suffix[k] covers steps k..n-1.
  std::vector<double> suffix(n + 1, 1.0);
  for (std::size_t k = n; k-- > 0;) {
    suffix[k] = suffix[k + 1] * traj.steps[k].target_prob;
  }
  const double w_total = traj.target_reach / traj.sample_reach;

  GameState state = game.initial_state();
  double sample_prefix = 1.0;
  double chance_prefix = 1.0;
  std::array<double, 2> target_prefix{1.0, 1.0};

  for (std::size_t k = 0; k < n; ++k) {
    const TrajectoryStep& step = traj.steps[k];

    if (step.player == kChance) {
      MCCFR_CHECK(state.is_chance());
      const std::vector<ChanceOutcome> outcomes = game.chance_outcomes(state);
      MCCFR_CHECK(step.action >= 0 && step.action < static_cast<int>(outcomes.size()));
      state = outcomes[step.action].state;
      sample_prefix *= step.sample_prob;
      chance_prefix *= step.sample_prob;
      continue;
    }

    const int i = step.player;
    const std::vector<Action> legal = game.legal_actions(state);
    MCCFR_CHECK(static_cast<int>(legal.size()) == step.arity);
    MCCFR_CHECK(step.action_index >= 0 && step.action_index < step.arity);
    const std::vector<double> sigma = target(step.key, legal);

    // Outcome-sampling estimate: U carries the terminal utility, the
    // opponent-and-chance reach to this state, and the full sampling reach.
    const double U = traj.utility[i] * chance_prefix * target_prefix[1 - i] /
                     traj.sample_reach;
    const double ctl = suffix[k + 1];                       // child-to-terminal reach
    const double itl = sigma[step.action_index] * ctl;      // infoset-to-terminal reach

    if (observer) {
      StepUpdate update;
      update.step = &step;
      update.legal = legal;
      update.target_dist = sigma;
      update.sampled_action_value = U * ctl;
      update.sampled_weighted_regret = U * (ctl - itl);
      update.trajectory_weight = w_total;
      (*observer)(update);
    }

    InfosetStats& row = table.row(step.key, step.arity);
    const std::vector<double>* b_row = nullptr;
    if (baseline) b_row = &baseline->row(step.key, step.arity);

    for (int a = 0; a < step.arity; ++a) {
      double delta = a == step.action_index ? U * (ctl - itl) : -U * itl;
      // Control variate: subtracting b*(W-1) is the (r-b)*W + b form of the
      // raw increment W*r, without ever dividing by W.
      if (b_row) delta -= (*b_row)[a] * (w_total - 1.0);
      row.regret[a] += delta;
    }

    // Average-strategy accumulation: own target reach over sampling reach to
    // this state, times the target distribution.
    const double avg_scale = target_prefix[i] / sample_prefix;
    for (int a = 0; a < step.arity; ++a) {
      row.avg_weight[a] += avg_scale * sigma[a];
    }
    row.visits += 1;

    if (baseline && w_total > 1e-12) {
      std::vector<double> raw(step.arity);
      for (int a = 0; a < step.arity; ++a) {
        const double delta = a == step.action_index ? U * (ctl - itl) : -U * itl;
        raw[a] = delta / w_total;
      }
      baseline->ema_update(step.key, raw, baseline_rho);
    }

    sample_prefix *= step.sample_prob;
    target_prefix[i] *= step.target_prob;
    state = game.apply(state, step.action);
  }
  MCCFR_CHECK(state.is_terminal());
  return w_total;
}

double tabular_os_iteration(const Game& game, RegretTable& table, double exploration,
                            Rng& deal_rng, Rng& act_rng, BaselineTable* baseline,
                            double baseline_rho) {
  const PolicyLookup rm = [&table](const InfoSetKey& key, std::span<const Action> legal) {
    return current_strategy(table, key, static_cast<int>(legal.size()));
  };
  const Trajectory traj = sample_trajectory(game, rm, rm, exploration, deal_rng, act_rng);
  return apply_outcome_updates(game, table, traj, rm, baseline, baseline_rho);
}

}  // namespace mccfr
