#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mccfr {

// Pseudo-player ids for node ownership.
inline constexpr int kChance = -1;
inline constexpr int kTerminal = -2;

// Index into a domain's fixed action alphabet (see each game's constants).
using Action = int;

// One concrete node of the game tree. Value type: apply() returns a new state
// and never mutates its argument.
struct GameState {
  std::array<int, 2> private_cards{-1, -1};
  int community_card = -1;             // -1 while absent
  std::array<std::string, 2> history;  // action characters, one string per street
  int street = 0;
  std::array<int, 2> pot{0, 0};        // chips committed per player (antes included)
  int to_act = kChance;                // 0, 1, kChance or kTerminal

  bool is_terminal() const { return to_act == kTerminal; }
  bool is_chance() const { return to_act == kChance; }
};

// Identity of a decision point as seen by its acting player: own private card,
// any public card, and the full public action history. Two states map to the
// same key exactly when the acting player cannot tell them apart.
struct InfoSetKey {
  int player = 0;
  int private_card = -1;
  int community_card = -1;  // -1 = none dealt
  std::string history;      // streets joined with '/'

  auto operator<=>(const InfoSetKey&) const = default;

  // Compact readable form, e.g. "1|c2|b4|cr/c"; round-trips via parse.
  std::string str() const;
  static InfoSetKey parse(const std::string& text);
};

struct ChanceOutcome {
  GameState state;
  double prob = 0.0;
};

// Two-player zero-sum extensive-form game with explicit chance nodes.
class Game {
 public:
  virtual ~Game() = default;

  virtual std::string name() const = 0;
  // Size of the fixed action alphabet (legal subsets index into it).
  virtual int num_actions() const = 0;
  // Length of a feature encoding.
  virtual int feature_size() const = 0;
  // Longest possible run of decision steps on any root-to-terminal path.
  virtual int max_decision_depth() const = 0;
  // Largest possible |utility|.
  virtual double max_utility() const = 0;

  virtual GameState initial_state() const = 0;
  // Successor states of a chance node with their probabilities (sum to 1).
  virtual std::vector<ChanceOutcome> chance_outcomes(const GameState&) const = 0;
  // Legal actions at a decision node, in alphabet order, never empty.
  virtual std::vector<Action> legal_actions(const GameState&) const = 0;
  virtual GameState apply(const GameState&, Action) const = 0;
  // Payoff at a terminal state; utilities of the two players sum to zero.
  virtual double utility(const GameState&, int player) const = 0;

  virtual InfoSetKey infoset_key(const GameState&) const = 0;
  // Fixed-length encoding of a key, all entries in [0, 1], injective over the
  // domain's reachable keys.
  virtual std::vector<double> encode_features(const InfoSetKey&) const = 0;

  virtual char action_char(Action) const = 0;
  virtual std::string action_name(Action) const = 0;
};

// All reachable decision-point keys, deduplicated, in sorted (deterministic)
// order.
std::vector<InfoSetKey> enumerate_infosets(const Game& game);

// Same enumeration but paired with each key's legal action list.
std::vector<std::pair<InfoSetKey, std::vector<Action>>> enumerate_infosets_with_actions(
    const Game& game);

}  // namespace mccfr
