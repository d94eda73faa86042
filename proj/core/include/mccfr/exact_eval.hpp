#pragma once

#include <optional>

#include "mccfr/game.hpp"
#include "mccfr/regret_table.hpp"

namespace mccfr {

// Expected utility for a player at the root when both players follow the
// profile. Full tree walk, exact.
double expected_value(const Game& game, const StrategyProfile& profile, int player);

// Counterfactual value of an infoset for its acting player: the sum over the
// infoset's states of the opponent-and-chance reach times the state's expected
// continuation utility under the profile. When an action is given, play it at
// the infoset and follow the profile afterwards.
double exact_cfv(const Game& game, const StrategyProfile& profile, const InfoSetKey& key,
                 std::optional<Action> action = std::nullopt);

// Value of the responder's best response against the profile's other player,
// computed by backward induction over the responder's information sets.
double best_response_value(const Game& game, const StrategyProfile& profile, int responder);

// Mean of the two best-response values. Zero exactly at an equilibrium,
// positive otherwise.
double exploitability(const Game& game, const StrategyProfile& profile);

}  // namespace mccfr
