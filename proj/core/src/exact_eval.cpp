#include "mccfr/exact_eval.hpp"

#include <algorithm>
#include <map>

#include "mccfr/check.hpp"

namespace mccfr {

namespace {

// Expected utility for `player` from `state` onward, both players following
// the profile.
double continuation_value(const Game& game, const StrategyProfile& profile,
                          const GameState& state, int player) {
  if (state.is_terminal()) return game.utility(state, player);
  if (state.is_chance()) {
    double v = 0.0;
    for (const ChanceOutcome& o : game.chance_outcomes(state)) {
      v += o.prob * continuation_value(game, profile, o.state, player);
    }
    return v;
  }
  const std::vector<Action> legal = game.legal_actions(state);
  const std::vector<double> dist =
      profile.dist(game.infoset_key(state), static_cast<int>(legal.size()));
  double v = 0.0;
  for (std::size_t i = 0; i < legal.size(); ++i) {
    if (dist[i] == 0.0) continue;
    v += dist[i] * continuation_value(game, profile, game.apply(state, legal[i]), player);
  }
  return v;
}

// Walks the whole tree accumulating reach_other = (chance reach) * (opponent
// reach) at every state matching `key`.
void accumulate_cfv(const Game& game, const StrategyProfile& profile, const GameState& state,
                    const InfoSetKey& key, std::optional<Action> action, double reach_other,
                    double& total) {
  if (state.is_terminal()) return;
  if (state.is_chance()) {
    for (const ChanceOutcome& o : game.chance_outcomes(state)) {
      accumulate_cfv(game, profile, o.state, key, action, reach_other * o.prob, total);
    }
    return;
  }
  const InfoSetKey here = game.infoset_key(state);
  if (here == key) {
    // States of one infoset share a public history, so none lies below another:
    // accumulate and stop descending.
    if (action.has_value()) {
      total += reach_other *
               continuation_value(game, profile, game.apply(state, *action), key.player);
    } else {
      total += reach_other * continuation_value(game, profile, state, key.player);
    }
    return;
  }
  const std::vector<Action> legal = game.legal_actions(state);
  const std::vector<double> dist = profile.dist(here, static_cast<int>(legal.size()));
  const bool is_opponent = state.to_act != key.player;
  for (std::size_t i = 0; i < legal.size(); ++i) {
    const double factor = is_opponent ? dist[i] : 1.0;
    if (is_opponent && factor == 0.0) continue;
    accumulate_cfv(game, profile, game.apply(state, legal[i]), key, action,
                   reach_other * factor, total);
  }
}

}  // namespace

double expected_value(const Game& game, const StrategyProfile& profile, int player) {
  MCCFR_CHECK(player == 0 || player == 1);
  return continuation_value(game, profile, game.initial_state(), player);
}

double exact_cfv(const Game& game, const StrategyProfile& profile, const InfoSetKey& key,
                 std::optional<Action> action) {
  double total = 0.0;
  accumulate_cfv(game, profile, game.initial_state(), key, action, 1.0, total);
  return total;
}

namespace {

struct Node {
  GameState state;
  double reach_other = 0.0;  // chance times opponent reach from the root
  int depth = 0;
  std::vector<int> children;        // indices into the node vector
  std::vector<double> move_probs;   // chance or opponent probabilities, empty at
                                    // responder and terminal nodes
  double value = 0.0;               // responder's value, filled bottom-up
};

void build(const Game& game, const StrategyProfile& profile, int responder,
           const GameState& state, double reach_other, int depth, std::vector<Node>& nodes,
           std::map<InfoSetKey, std::vector<int>>& groups) {
  const int id = static_cast<int>(nodes.size());
  nodes.push_back({state, reach_other, depth, {}, {}, 0.0});
  if (state.is_terminal()) return;

  if (state.is_chance()) {
    for (const ChanceOutcome& o : game.chance_outcomes(state)) {
      nodes[id].children.push_back(static_cast<int>(nodes.size()));
      nodes[id].move_probs.push_back(o.prob);
      build(game, profile, responder, o.state, reach_other * o.prob, depth + 1, nodes,
            groups);
    }
    return;
  }

  const std::vector<Action> legal = game.legal_actions(state);
  if (state.to_act == responder) {
    groups[game.infoset_key(state)].push_back(id);
    for (Action a : legal) {
      nodes[id].children.push_back(static_cast<int>(nodes.size()));
      build(game, profile, responder, game.apply(state, a), reach_other, depth + 1, nodes,
            groups);
    }
  } else {
    const std::vector<double> dist =
        profile.dist(game.infoset_key(state), static_cast<int>(legal.size()));
    for (std::size_t i = 0; i < legal.size(); ++i) {
      nodes[id].children.push_back(static_cast<int>(nodes.size()));
      nodes[id].move_probs.push_back(dist[i]);
      build(game, profile, responder, game.apply(state, legal[i]), reach_other * dist[i],
            depth + 1, nodes, groups);
    }
  }
}

}  // namespace

double best_response_value(const Game& game, const StrategyProfile& profile, int responder) {
  MCCFR_CHECK(responder == 0 || responder == 1);
  std::vector<Node> nodes;
  std::map<InfoSetKey, std::vector<int>> groups;
  build(game, profile, responder, game.initial_state(), 1.0, 0, nodes, groups);

  // Index infoset groups by depth; all states of one infoset share a depth.
  std::map<int, std::vector<const std::vector<int>*>> groups_at_depth;
  for (const auto& [key, members] : groups) {
    groups_at_depth[nodes[members.front()].depth].push_back(&members);
  }

  int max_depth = 0;
  for (const Node& n : nodes) max_depth = std::max(max_depth, n.depth);

  std::vector<char> resolved(nodes.size(), 0);
  for (int depth = max_depth; depth >= 0; --depth) {
    // Responder infosets at this depth: one maximizing action for the whole
    // group, weighted by each member's opponent-and-chance reach.
    if (auto it = groups_at_depth.find(depth); it != groups_at_depth.end()) {
      for (const std::vector<int>* members : it->second) {
        const std::size_t arity = nodes[members->front()].children.size();
        int best = 0;
        double best_q = -1e300;
        for (std::size_t a = 0; a < arity; ++a) {
          double q = 0.0;
          for (int id : *members) q += nodes[id].reach_other * nodes[nodes[id].children[a]].value;
          if (q > best_q) {
            best_q = q;
            best = static_cast<int>(a);
          }
        }
        for (int id : *members) {
          nodes[id].value = nodes[nodes[id].children[best]].value;
          resolved[id] = 1;
        }
      }
    }
    // Everything else at this depth is terminal, chance, or opponent-owned.
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      Node& n = nodes[id];
      if (n.depth != depth || resolved[id]) continue;
      if (n.state.is_terminal()) {
        n.value = game.utility(n.state, responder);
      } else {
        double v = 0.0;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          v += n.move_probs[i] * nodes[n.children[i]].value;
        }
        n.value = v;
      }
    }
  }
  return nodes.front().value;
}

double exploitability(const Game& game, const StrategyProfile& profile) {
  return 0.5 * (best_response_value(game, profile, 0) + best_response_value(game, profile, 1));
}

}  // namespace mccfr
