#pragma once

#include "mccfr/game.hpp"

namespace mccfr {

// Six-card limit poker: two suits of J/Q/K (card id = 2*rank + suit), one
// private card each, both ante 1 chip. Two betting streets with the first
// player opening both; a community card is revealed between them. Fixed raise
// sizes of 2 chips on the first street and 4 on the second, at most two raises
// per street. Call matches the outstanding bet (a check when there is none);
// Fold is only available against an outstanding bet. Showdown: a card pairing
// the community card beats any unpaired card, otherwise the higher rank wins
// and equal ranks split.
class LeducGame : public Game {
 public:
  static constexpr Action kFold = 0;
  static constexpr Action kCall = 1;
  static constexpr Action kRaise = 2;
  static constexpr int kNumCards = 6;
  static constexpr int kMaxRaisesPerStreet = 2;

  static int rank(int card) { return card / 2; }
  static int raise_size(int street) { return street == 0 ? 2 : 4; }

  std::string name() const override { return "leduc"; }
  int num_actions() const override { return 3; }
  int feature_size() const override { return 48; }
  int max_decision_depth() const override { return 8; }
  double max_utility() const override { return 13.0; }

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
