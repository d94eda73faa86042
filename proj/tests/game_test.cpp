#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mccfr/check.hpp"
#include "mccfr/game.hpp"
#include "mccfr/kuhn.hpp"
#include "mccfr/leduc.hpp"

using namespace mccfr;

namespace {

// Walks actions from the initial state, taking the chance outcome whose state
// matches the wanted private (and, mid-game, community) cards.
GameState play(const Game& g, int card0, int card1, const std::string& actions,
               int community = -1) {
  GameState s = g.initial_state();
  std::size_t next = 0;
  while (next < actions.size() || s.is_chance()) {
    if (s.is_chance()) {
      bool advanced = false;
      for (const ChanceOutcome& o : g.chance_outcomes(s)) {
        const bool root = s.private_cards[0] < 0;
        if (root && o.state.private_cards[0] == card0 && o.state.private_cards[1] == card1) {
          s = o.state;
          advanced = true;
          break;
        }
        if (!root && o.state.community_card == community) {
          s = o.state;
          advanced = true;
          break;
        }
      }
      REQUIRE(advanced);
      continue;
    }
    const char c = actions[next++];
    Action chosen = -1;
    for (const Action a : g.legal_actions(s)) {
      if (g.action_char(a) == c) chosen = a;
    }
    REQUIRE(chosen >= 0);
    s = g.apply(s, chosen);
  }
  return s;
}

void walk_zero_sum(const Game& g, const GameState& s, int* terminals, double* max_abs) {
  if (s.is_terminal()) {
    ++*terminals;
    const double u0 = g.utility(s, 0);
    const double u1 = g.utility(s, 1);
    CHECK(u0 + u1 == doctest::Approx(0.0).epsilon(1e-12));
    *max_abs = std::max(*max_abs, std::abs(u0));
    return;
  }
  if (s.is_chance()) {
    double total = 0.0;
    for (const ChanceOutcome& o : g.chance_outcomes(s)) {
      CHECK(o.prob > 0.0);
      total += o.prob;
      walk_zero_sum(g, o.state, terminals, max_abs);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    return;
  }
  const std::vector<Action> legal = g.legal_actions(s);
  REQUIRE(!legal.empty());
  for (const Action a : legal) walk_zero_sum(g, g.apply(s, a), terminals, max_abs);
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("kuhn deals six ordered card pairs uniformly") {
  KuhnGame g;
  const auto outcomes = g.chance_outcomes(g.initial_state());
  REQUIRE(outcomes.size() == 6);
  std::set<std::pair<int, int>> deals;
  for (const ChanceOutcome& o : outcomes) {
    CHECK(o.prob == doctest::Approx(1.0 / 6.0));
    CHECK(o.state.private_cards[0] != o.state.private_cards[1]);
    CHECK(o.state.to_act == 0);
    deals.insert({o.state.private_cards[0], o.state.private_cards[1]});
  }
  CHECK(deals.size() == 6);
}

TEST_CASE("kuhn terminal payoffs match the rules") {
  KuhnGame g;
  // Highest card is 2, lowest 0. Both players ante one chip.
  CHECK(g.utility(play(g, 2, 0, "pp"), 0) == doctest::Approx(1.0));   // showdown, 1 chip
  CHECK(g.utility(play(g, 0, 2, "pp"), 0) == doctest::Approx(-1.0));
  CHECK(g.utility(play(g, 2, 0, "bb"), 0) == doctest::Approx(2.0));   // called bet
  CHECK(g.utility(play(g, 0, 2, "bb"), 0) == doctest::Approx(-2.0));
  CHECK(g.utility(play(g, 0, 2, "bp"), 0) == doctest::Approx(1.0));   // bluff takes the ante
  CHECK(g.utility(play(g, 2, 0, "pbp"), 0) == doctest::Approx(-1.0)); // fold to a bet
  CHECK(g.utility(play(g, 2, 0, "pbb"), 0) == doctest::Approx(2.0));  // call after check
  CHECK(g.utility(play(g, 0, 2, "pbb"), 0) == doctest::Approx(-2.0));
}

TEST_CASE("kuhn tree is zero-sum with utilities bounded by the declared maximum") {
  KuhnGame g;
  int terminals = 0;
  double max_abs = 0.0;
  walk_zero_sum(g, g.initial_state(), &terminals, &max_abs);
  CHECK(terminals == 30);  // 6 deals x 5 betting sequences
  CHECK(max_abs == doctest::Approx(g.max_utility()));
}

TEST_CASE("kuhn has exactly the twelve known decision points") {
  KuhnGame g;
  const std::vector<InfoSetKey> keys = enumerate_infosets(g);
  REQUIRE(keys.size() == 12);
  std::set<std::string> got;
  for (const InfoSetKey& k : keys) got.insert(k.str());
  const std::set<std::string> expected = {
      "0|c0|b-1|",   "0|c1|b-1|",   "0|c2|b-1|",   "0|c0|b-1|pb", "0|c1|b-1|pb",
      "0|c2|b-1|pb", "1|c0|b-1|p",  "1|c1|b-1|p",  "1|c2|b-1|p",  "1|c0|b-1|b",
      "1|c1|b-1|b",  "1|c2|b-1|b"};
  CHECK(got == expected);
}

TEST_CASE("feature encodings are injective, bounded and of declared size") {
  for (const Game* g : std::initializer_list<const Game*>{new KuhnGame, new LeducGame}) {
    const auto keys = enumerate_infosets(*g);
    std::set<std::vector<double>> seen;
    for (const InfoSetKey& k : keys) {
      const std::vector<double> x = g->encode_features(k);
      REQUIRE(static_cast<int>(x.size()) == g->feature_size());
      for (double v : x) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      seen.insert(x);
    }
    CHECK(seen.size() == keys.size());
    delete g;
  }
}

TEST_CASE("infoset keys survive the text round trip") {
  for (const Game* g : std::initializer_list<const Game*>{new KuhnGame, new LeducGame}) {
    for (const InfoSetKey& k : enumerate_infosets(*g)) {
      CHECK(InfoSetKey::parse(k.str()) == k);
    }
    delete g;
  }
}

TEST_CASE("leduc deals thirty ordered pairs, then four community cards") {
  LeducGame g;
  const auto outcomes = g.chance_outcomes(g.initial_state());
  REQUIRE(outcomes.size() == 30);
  std::set<std::pair<int, int>> deals;
  for (const ChanceOutcome& o : outcomes) {
    CHECK(o.prob == doctest::Approx(1.0 / 30.0));
    CHECK(o.state.private_cards[0] != o.state.private_cards[1]);
    deals.insert({o.state.private_cards[0], o.state.private_cards[1]});
  }
  CHECK(deals.size() == 30);

  // Close the first betting round with check-check; a community card comes.
  GameState s = outcomes[0].state;  // cards 0 and 1
  s = g.apply(s, LeducGame::kCall);
  s = g.apply(s, LeducGame::kCall);
  REQUIRE(s.is_chance());
  const auto community = g.chance_outcomes(s);
  REQUIRE(community.size() == 4);
  for (const ChanceOutcome& o : community) {
    CHECK(o.prob == doctest::Approx(0.25));
    CHECK(o.state.community_card != s.private_cards[0]);
    CHECK(o.state.community_card != s.private_cards[1]);
    CHECK(o.state.street == 1);
    CHECK(o.state.to_act == 0);  // first player opens both rounds
  }
}

TEST_CASE("leduc legal actions follow to-call and the raise cap") {
  LeducGame g;
  GameState s = g.chance_outcomes(g.initial_state())[0].state;
  // Opening: nothing to call, so no fold; raising allowed.
  CHECK(g.legal_actions(s) == std::vector<Action>{LeducGame::kCall, LeducGame::kRaise});
  s = g.apply(s, LeducGame::kRaise);
  // Facing a raise: all three.
  CHECK(g.legal_actions(s) ==
        std::vector<Action>{LeducGame::kFold, LeducGame::kCall, LeducGame::kRaise});
  s = g.apply(s, LeducGame::kRaise);
  // Cap of two raises per round: no third raise.
  CHECK(g.legal_actions(s) == std::vector<Action>{LeducGame::kFold, LeducGame::kCall});
}

TEST_CASE("leduc pot accounting and showdown payoffs") {
  LeducGame g;
  // Raise sizes are 2 then 4 on top of one-chip antes. Sequence: raise-call on
  // the first round, raise-raise-call on the second.
  GameState s = g.chance_outcomes(g.initial_state())[0].state;  // hole cards 0 and 1
  s = g.apply(s, LeducGame::kRaise);
  CHECK(s.pot == std::array<int, 2>{3, 1});
  s = g.apply(s, LeducGame::kCall);
  CHECK(s.pot == std::array<int, 2>{3, 3});
  REQUIRE(s.is_chance());
  GameState t;
  for (const ChanceOutcome& o : g.chance_outcomes(s)) {
    if (o.state.community_card == 2) t = o.state;
  }
  t = g.apply(t, LeducGame::kRaise);
  CHECK(t.pot == std::array<int, 2>{7, 3});
  t = g.apply(t, LeducGame::kRaise);
  CHECK(t.pot == std::array<int, 2>{7, 11});
  t = g.apply(t, LeducGame::kCall);
  REQUIRE(t.is_terminal());
  CHECK(t.pot == std::array<int, 2>{11, 11});
  // Hole cards 0 (rank 0) vs 1 (rank 0), community 2 (rank 1): both ranks
  // equal, neither pairs the community, tie splits the pot.
  CHECK(g.utility(t, 0) == doctest::Approx(0.0));

  // A pair beats a higher unpaired card; checked-down pots hold one ante each.
  GameState p = play(g, 2, 4, "cc" "cc", /*community=*/3);  // community pairs player 0
  REQUIRE(p.is_terminal());
  CHECK(g.utility(p, 0) == doctest::Approx(1.0));
  GameState q = play(g, 2, 4, "cc" "cc", /*community=*/5);  // community pairs player 1
  CHECK(g.utility(q, 0) == doctest::Approx(-1.0));
}

TEST_CASE("leduc fold hands the folder's chips to the other player") {
  LeducGame g;
  GameState s = g.chance_outcomes(g.initial_state())[0].state;
  s = g.apply(s, LeducGame::kRaise);
  s = g.apply(s, LeducGame::kFold);
  REQUIRE(s.is_terminal());
  CHECK(g.utility(s, 0) == doctest::Approx(1.0));  // second player loses the ante
  CHECK(g.utility(s, 1) == doctest::Approx(-1.0));

  // Fold on the second round after calling a first-round raise.
  GameState t = play(g, 0, 2, "rc" "rf", /*community=*/4);
  REQUIRE(t.is_terminal());
  CHECK(g.utility(t, 0) == doctest::Approx(3.0));  // opponent committed 1 + 2
}

TEST_CASE("leduc decision points split into pre- and post-community counts") {
  LeducGame g;
  const std::vector<InfoSetKey> keys = enumerate_infosets(g);
  REQUIRE(keys.size() == 936);
  int before = 0, after = 0;
  for (const InfoSetKey& k : keys) {
    (k.community_card < 0 ? before : after) += 1;
  }
  // 6 first-round public histories x 6 hole cards; then 6 holes x 5 boards x
  // 5 round-one closings x 6 round-two histories.
  CHECK(before == 36);
  CHECK(after == 900);
}

TEST_CASE("leduc tree is zero-sum with utilities bounded by the declared maximum") {
  LeducGame g;
  int terminals = 0;
  double max_abs = 0.0;
  walk_zero_sum(g, g.initial_state(), &terminals, &max_abs);
  CHECK(terminals > 0);
  CHECK(max_abs == doctest::Approx(g.max_utility()));  // 1 + 2 + 2 + 4 + 4 = 13
}

}  // TEST_SUITE
