#include "mccfr/leduc.hpp"

#include <algorithm>

#include "mccfr/check.hpp"

namespace mccfr {

namespace {
int raises_in(const std::string& street_history) {
  return static_cast<int>(std::count(street_history.begin(), street_history.end(), 'r'));
}
}  // namespace

GameState LeducGame::initial_state() const {
  GameState s;
  s.pot = {1, 1};  // antes
  s.to_act = kChance;
  return s;
}

std::vector<ChanceOutcome> LeducGame::chance_outcomes(const GameState& s) const {
  MCCFR_CHECK(s.is_chance());
  std::vector<ChanceOutcome> outs;
  if (s.private_cards[0] < 0) {
    // Root deal: ordered private cards.
    for (int c0 = 0; c0 < kNumCards; ++c0) {
      for (int c1 = 0; c1 < kNumCards; ++c1) {
        if (c0 == c1) continue;
        GameState dealt = s;
        dealt.private_cards = {c0, c1};
        dealt.to_act = 0;
        outs.push_back({dealt, 1.0 / 30.0});
      }
    }
  } else {
    // Between streets: reveal one of the four remaining cards.
    MCCFR_CHECK(s.community_card < 0 && s.street == 0);
    for (int c = 0; c < kNumCards; ++c) {
      if (c == s.private_cards[0] || c == s.private_cards[1]) continue;
      GameState dealt = s;
      dealt.community_card = c;
      dealt.street = 1;
      dealt.to_act = 0;
      outs.push_back({dealt, 1.0 / 4.0});
    }
  }
  return outs;
}

std::vector<Action> LeducGame::legal_actions(const GameState& s) const {
  MCCFR_CHECK(s.to_act == 0 || s.to_act == 1);
  const int actor = s.to_act;
  const int to_call = s.pot[1 - actor] - s.pot[actor];
  const bool can_raise = raises_in(s.history[s.street]) < kMaxRaisesPerStreet;
  std::vector<Action> legal;
  if (to_call > 0) legal.push_back(kFold);
  legal.push_back(kCall);
  if (can_raise) legal.push_back(kRaise);
  return legal;
}

GameState LeducGame::apply(const GameState& s, Action a) const {
  MCCFR_CHECK_MSG(s.to_act == 0 || s.to_act == 1, "apply on non-decision node");
  const std::vector<Action> legal = legal_actions(s);
  MCCFR_CHECK_MSG(std::find(legal.begin(), legal.end(), a) != legal.end(),
                  "illegal action " << a << " at history '" << s.history[s.street] << "'");
  const int actor = s.to_act;
  const int opp = 1 - actor;
  GameState next = s;
  next.history[s.street] += action_char(a);

  switch (a) {
    case kFold:
      next.to_act = kTerminal;
      break;
    case kCall: {
      next.pot[actor] = next.pot[opp];
      // A call behind the opening check, or of any raise, closes the street.
      if (next.history[s.street].size() >= 2) {
        next.to_act = s.street == 0 ? kChance : kTerminal;
      } else {
        next.to_act = opp;
      }
      break;
    }
    case kRaise:
      next.pot[actor] = next.pot[opp] + raise_size(s.street);
      next.to_act = opp;
      break;
  }
  return next;
}

double LeducGame::utility(const GameState& s, int player) const {
  MCCFR_CHECK_MSG(s.is_terminal(), "utility on non-terminal state");
  MCCFR_CHECK(player == 0 || player == 1);

  const std::string& last_street = s.history[s.street];
  if (!last_street.empty() && last_street.back() == 'f') {
    const int folder = static_cast<int>(last_street.size() - 1) % 2;
    const int winner = 1 - folder;
    return player == winner ? s.pot[folder] : -s.pot[player];
  }

  // Showdown. Pots are equal here, so the winner takes the loser's stake.
  const int com = rank(s.community_card);
  const int r0 = rank(s.private_cards[0]);
  const int r1 = rank(s.private_cards[1]);
  const bool pair0 = r0 == com;
  const bool pair1 = r1 == com;
  int winner;
  if (pair0 != pair1) {
    winner = pair0 ? 0 : 1;
  } else if (r0 != r1) {
    winner = r0 > r1 ? 0 : 1;
  } else {
    return 0.0;  // split pot
  }
  return player == winner ? s.pot[1 - player] : -s.pot[player];
}

InfoSetKey LeducGame::infoset_key(const GameState& s) const {
  MCCFR_CHECK(s.to_act == 0 || s.to_act == 1);
  InfoSetKey key;
  key.player = s.to_act;
  key.private_card = s.private_cards[s.to_act];
  key.community_card = s.community_card;
  key.history = s.street == 0 ? s.history[0] : s.history[0] + "/" + s.history[1];
  return key;
}

// Layout (48 entries, all in [0, 1]):
//   [0..5]   hole card one-hot
//   [6..12]  community card: "none" flag then card one-hot
//   [13..14] street one-hot
//   [15..16] seat one-hot
//   [17..40] eight history slots, each a Fold/Call/Raise one-hot; the first
//            street fills slots 0..3, the second fills slots 4..7
//   [41..42] chips committed per seat, rescaled by the 13-chip maximum
//   [43..45] raises so far on the current street, one-hot over 0/1/2
//   [46]     pot odds: cost of calling over pot-plus-call (0 when nothing to call)
//   [47]     1 when facing an outstanding bet
std::vector<double> LeducGame::encode_features(const InfoSetKey& key) const {
  MCCFR_CHECK(key.private_card >= 0 && key.private_card < kNumCards);
  std::vector<double> x(feature_size(), 0.0);
  x[key.private_card] = 1.0;

  const auto slash = key.history.find('/');
  const int street = key.community_card >= 0 ? 1 : 0;
  MCCFR_CHECK_MSG((slash != std::string::npos) == (street == 1),
                  "inconsistent key: " << key.str());
  const std::string seg0 =
      slash == std::string::npos ? key.history : key.history.substr(0, slash);
  const std::string seg1 = slash == std::string::npos ? "" : key.history.substr(slash + 1);

  if (key.community_card >= 0) {
    x[7 + key.community_card] = 1.0;
  } else {
    x[6] = 1.0;
  }
  x[13 + street] = 1.0;
  x[15 + key.player] = 1.0;

  // Replay the public history to recover commitments and the amount to call.
  std::array<int, 2> contrib{1, 1};
  const auto replay = [&](const std::string& seg, int str, int slot_base) {
    MCCFR_CHECK(seg.size() <= 4);
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const int actor = static_cast<int>(i) % 2;
      const char c = seg[i];
      int offset;
      switch (c) {
        case 'f': offset = 0; break;
        case 'c': offset = 1; break;
        case 'r': offset = 2; break;
        default: MCCFR_CHECK_MSG(false, "bad history char " << c); offset = 0;
      }
      x[17 + 3 * (slot_base + static_cast<int>(i)) + offset] = 1.0;
      if (c == 'c') contrib[actor] = contrib[1 - actor];
      if (c == 'r') contrib[actor] = contrib[1 - actor] + raise_size(str);
    }
  };
  replay(seg0, 0, 0);
  replay(seg1, 1, 4);

  x[41] = contrib[0] / 13.0;
  x[42] = contrib[1] / 13.0;

  const std::string& current = street == 0 ? seg0 : seg1;
  MCCFR_CHECK_MSG(static_cast<int>(current.size()) % 2 == key.player,
                  "history length does not match seat in key " << key.str());
  const int raises = raises_in(current);
  MCCFR_CHECK(raises <= kMaxRaisesPerStreet);
  x[43 + raises] = 1.0;

  const int to_call = contrib[1 - key.player] - contrib[key.player];
  MCCFR_CHECK(to_call >= 0);
  if (to_call > 0) {
    x[46] = static_cast<double>(to_call) / (contrib[0] + contrib[1] + to_call);
    x[47] = 1.0;
  }
  return x;
}

char LeducGame::action_char(Action a) const {
  switch (a) {
    case kFold: return 'f';
    case kCall: return 'c';
    case kRaise: return 'r';
  }
  MCCFR_CHECK_MSG(false, "bad action " << a);
  return '?';
}

std::string LeducGame::action_name(Action a) const {
  switch (a) {
    case kFold: return "Fold";
    case kCall: return "Call";
    case kRaise: return "Raise";
  }
  MCCFR_CHECK_MSG(false, "bad action " << a);
  return "?";
}

}  // namespace mccfr
