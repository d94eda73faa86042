#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "mccfr/game.hpp"

namespace mccfr {

// Per-infoset accumulators for regret matching: cumulative counterfactual
// regrets, cumulative average-strategy weight, and a visit counter. Entries
// are indexed by position in the infoset's legal action list.
struct InfosetStats {
  std::vector<double> regret;
  std::vector<double> avg_weight;
  std::int64_t visits = 0;
};

class RegretTable {
 public:
  // Returns the row for a key, creating a zeroed row of the given arity on
  // first access.
  InfosetStats& row(const InfoSetKey& key, int arity);
  const InfosetStats* find(const InfoSetKey& key) const;

  std::size_t size() const { return rows_.size(); }
  const std::map<InfoSetKey, InfosetStats>& rows() const { return rows_; }
  void clear() { rows_.clear(); }

 private:
  std::map<InfoSetKey, InfosetStats> rows_;
};

// Distribution proportional to the positive part of the regrets; uniform when
// no regret is positive.
std::vector<double> regret_matching(std::span<const double> regret);

// Normalized cumulative average-strategy weights; uniform when no mass has
// accumulated.
std::vector<double> normalized_average(std::span<const double> avg_weight);

// Regret-matching strategy at a key; uniform for never-visited keys.
std::vector<double> current_strategy(const RegretTable& table, const InfoSetKey& key,
                                     int arity);
// Average strategy at a key; uniform for never-visited keys.
std::vector<double> average_strategy(const RegretTable& table, const InfoSetKey& key,
                                     int arity);

// A behavioral strategy for every infoset, indexed by key; lookups for missing
// keys fall back to uniform.
class StrategyProfile {
 public:
  void set(const InfoSetKey& key, std::vector<double> dist);
  std::vector<double> dist(const InfoSetKey& key, int arity) const;
  const std::map<InfoSetKey, std::vector<double>>& entries() const { return entries_; }

 private:
  std::map<InfoSetKey, std::vector<double>> entries_;
};

// Full profiles over a game's infoset enumeration.
StrategyProfile extract_average_profile(const Game& game, const RegretTable& table);
StrategyProfile extract_current_profile(const Game& game, const RegretTable& table);

// Text form, one "key,action,probability" line per action with actions as
// alphabet indices. Round-trips through load_profile_text.
void save_profile_text(std::ostream& os, const Game& game, const StrategyProfile& profile);
StrategyProfile load_profile_text(std::istream& is);

}  // namespace mccfr
