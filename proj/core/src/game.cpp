#include "mccfr/game.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mccfr/check.hpp"

namespace mccfr {

std::string InfoSetKey::str() const {
  std::ostringstream os;
  os << player << "|c" << private_card << "|b" << community_card << "|" << history;
  return os.str();
}

InfoSetKey InfoSetKey::parse(const std::string& text) {
  InfoSetKey key;
  std::istringstream is(text);
  std::string part;
  MCCFR_CHECK_MSG(std::getline(is, part, '|'), "bad infoset key: " << text);
  key.player = std::stoi(part);
  MCCFR_CHECK_MSG(std::getline(is, part, '|') && part.size() > 1 && part[0] == 'c',
                  "bad infoset key: " << text);
  key.private_card = std::stoi(part.substr(1));
  MCCFR_CHECK_MSG(std::getline(is, part, '|') && part.size() > 1 && part[0] == 'b',
                  "bad infoset key: " << text);
  key.community_card = std::stoi(part.substr(1));
  std::getline(is, part);  // possibly empty history
  key.history = part;
  return key;
}

namespace {
void walk(const Game& game, const GameState& s,
          std::map<InfoSetKey, std::vector<Action>>& out) {
  if (s.is_terminal()) return;
  if (s.is_chance()) {
    for (const ChanceOutcome& o : game.chance_outcomes(s)) walk(game, o.state, out);
    return;
  }
  std::vector<Action> legal = game.legal_actions(s);
  out.emplace(game.infoset_key(s), legal);
  for (Action a : legal) walk(game, game.apply(s, a), out);
}
}  // namespace

std::vector<std::pair<InfoSetKey, std::vector<Action>>> enumerate_infosets_with_actions(
    const Game& game) {
  std::map<InfoSetKey, std::vector<Action>> found;
  walk(game, game.initial_state(), found);
  return {found.begin(), found.end()};
}

std::vector<InfoSetKey> enumerate_infosets(const Game& game) {
  std::vector<InfoSetKey> keys;
  for (auto& [key, actions] : enumerate_infosets_with_actions(game)) keys.push_back(key);
  return keys;
}

}  // namespace mccfr
