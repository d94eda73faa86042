#include "mccfr/kuhn.hpp"

#include "mccfr/check.hpp"

namespace mccfr {

GameState KuhnGame::initial_state() const {
  GameState s;
  s.pot = {1, 1};  // antes
  s.to_act = kChance;
  return s;
}

std::vector<ChanceOutcome> KuhnGame::chance_outcomes(const GameState& s) const {
  MCCFR_CHECK(s.is_chance());
  std::vector<ChanceOutcome> outs;
  for (int c0 = 0; c0 < kNumCards; ++c0) {
    for (int c1 = 0; c1 < kNumCards; ++c1) {
      if (c0 == c1) continue;
      GameState dealt = s;
      dealt.private_cards = {c0, c1};
      dealt.to_act = 0;
      outs.push_back({dealt, 1.0 / 6.0});
    }
  }
  return outs;
}

std::vector<Action> KuhnGame::legal_actions(const GameState& s) const {
  MCCFR_CHECK(s.to_act == 0 || s.to_act == 1);
  return {kPass, kBet};
}

GameState KuhnGame::apply(const GameState& s, Action a) const {
  MCCFR_CHECK_MSG(s.to_act == 0 || s.to_act == 1, "apply on non-decision node");
  MCCFR_CHECK_MSG(a == kPass || a == kBet, "illegal action " << a);
  const int actor = s.to_act;
  GameState next = s;
  next.history[0] += action_char(a);
  if (a == kBet) next.pot[actor] += 1;  // opening bet and call both cost one chip

  const std::string& h = next.history[0];
  if (h == "pp" || h == "bb" || h == "bp" || h == "pbb" || h == "pbp") {
    next.to_act = kTerminal;
  } else {
    next.to_act = static_cast<int>(h.size()) % 2;
  }
  return next;
}

double KuhnGame::utility(const GameState& s, int player) const {
  MCCFR_CHECK_MSG(s.is_terminal(), "utility on non-terminal state");
  MCCFR_CHECK(player == 0 || player == 1);
  const std::string& h = s.history[0];
  int winner;
  if (h == "bp") {
    winner = 0;  // second player folded to the opening bet
  } else if (h == "pbp") {
    winner = 1;  // first player folded after check-bet
  } else {
    winner = s.private_cards[0] > s.private_cards[1] ? 0 : 1;
  }
  const int pot_total = s.pot[0] + s.pot[1];
  return player == winner ? pot_total - s.pot[player] : -s.pot[player];
}

InfoSetKey KuhnGame::infoset_key(const GameState& s) const {
  MCCFR_CHECK(s.to_act == 0 || s.to_act == 1);
  InfoSetKey key;
  key.player = s.to_act;
  key.private_card = s.private_cards[s.to_act];
  key.community_card = -1;
  key.history = s.history[0];
  return key;
}

// Layout (15 entries, all in [0, 1]):
//   [0..2]   own card one-hot
//   [3..4]   seat one-hot
//   [5..12]  four history slots, each a Pass/Bet one-hot (zeros when unused)
//   [13..14] chips committed per seat, rescaled by the 2-chip maximum
std::vector<double> KuhnGame::encode_features(const InfoSetKey& key) const {
  MCCFR_CHECK(key.private_card >= 0 && key.private_card < kNumCards);
  MCCFR_CHECK(key.history.size() <= 4);
  std::vector<double> x(feature_size(), 0.0);
  x[key.private_card] = 1.0;
  x[3 + key.player] = 1.0;
  std::array<int, 2> contrib{1, 1};
  for (std::size_t i = 0; i < key.history.size(); ++i) {
    const char c = key.history[i];
    MCCFR_CHECK_MSG(c == 'p' || c == 'b', "bad history char " << c);
    x[5 + 2 * i + (c == 'b' ? 1 : 0)] = 1.0;
    if (c == 'b') contrib[i % 2] += 1;
  }
  x[13] = contrib[0] / 2.0;
  x[14] = contrib[1] / 2.0;
  return x;
}

char KuhnGame::action_char(Action a) const {
  MCCFR_CHECK(a == kPass || a == kBet);
  return a == kPass ? 'p' : 'b';
}

std::string KuhnGame::action_name(Action a) const {
  MCCFR_CHECK(a == kPass || a == kBet);
  return a == kPass ? "Pass" : "Bet";
}

}  // namespace mccfr
