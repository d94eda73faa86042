#pragma once

#include "mccfr/game.hpp"

namespace mccfr {

// Three-card poker: cards J=0 < Q=1 < K=2, one dealt to each player, both ante
// 1 chip. One betting street with a 1-chip bet. Pass checks, or folds when
// facing a bet; Bet opens the betting, or calls when facing a bet. Terminal on
// a fold or once betting closes; showdown pays the pot to the higher card.
class KuhnGame : public Game {
 public:
  static constexpr Action kPass = 0;
  static constexpr Action kBet = 1;
  static constexpr int kNumCards = 3;

  std::string name() const override { return "kuhn"; }
  int num_actions() const override { return 2; }
  int feature_size() const override { return 15; }
  int max_decision_depth() const override { return 3; }
  double max_utility() const override { return 2.0; }

  GameState initial_state() const override;
  std::vector<ChanceOutcome> chance_outcomes(const GameState&) const override;
  std::vector<Action> legal_actions(const GameState&) const override;
  GameState apply(const GameState&, Action) const override;
  double utility(const GameState&, int player) const override;
  InfoSetKey infoset_key(const GameState&) const override;
  std::vector<double> encode_features(const InfoSetKey&) const override;
  char action_char(Action) const override;
  std::string action_name(Action) const override;
};

}  // namespace mccfr
