#include "mccfr/regret_table.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mccfr/check.hpp"

namespace mccfr {

InfosetStats& RegretTable::row(const InfoSetKey& key, int arity) {
  MCCFR_CHECK(arity > 0);
  InfosetStats& stats = rows_[key];
  if (stats.regret.empty()) {
    stats.regret.assign(arity, 0.0);
    stats.avg_weight.assign(arity, 0.0);
  }
  MCCFR_CHECK_MSG(static_cast<int>(stats.regret.size()) == arity,
                  "arity mismatch for key " << key.str());
  return stats;
}

const InfosetStats* RegretTable::find(const InfoSetKey& key) const {
  auto it = rows_.find(key);
  return it == rows_.end() ? nullptr : &it->second;
}

std::vector<double> regret_matching(std::span<const double> regret) {
  MCCFR_CHECK(!regret.empty());
  std::vector<double> dist(regret.size());
  double positive_sum = 0.0;
  for (std::size_t i = 0; i < regret.size(); ++i) {
    dist[i] = regret[i] > 0.0 ? regret[i] : 0.0;
    positive_sum += dist[i];
  }
  if (positive_sum > 0.0) {
    for (double& p : dist) p /= positive_sum;
  } else {
    const double u = 1.0 / static_cast<double>(dist.size());
    for (double& p : dist) p = u;
  }
  return dist;
}

std::vector<double> normalized_average(std::span<const double> avg_weight) {
  MCCFR_CHECK(!avg_weight.empty());
  double sum = 0.0;
  for (double w : avg_weight) {
    MCCFR_CHECK_MSG(w >= 0.0, "negative average-strategy weight");
    sum += w;
  }
  std::vector<double> dist(avg_weight.size());
  if (sum > 0.0) {
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = avg_weight[i] / sum;
  } else {
    const double u = 1.0 / static_cast<double>(dist.size());
    for (double& p : dist) p = u;
  }
  return dist;
}

std::vector<double> current_strategy(const RegretTable& table, const InfoSetKey& key,
                                     int arity) {
  if (const InfosetStats* stats = table.find(key)) return regret_matching(stats->regret);
  return std::vector<double>(arity, 1.0 / arity);
}

std::vector<double> average_strategy(const RegretTable& table, const InfoSetKey& key,
                                     int arity) {
  if (const InfosetStats* stats = table.find(key)) {
    return normalized_average(stats->avg_weight);
  }
  return std::vector<double>(arity, 1.0 / arity);
}

void StrategyProfile::set(const InfoSetKey& key, std::vector<double> dist) {
  MCCFR_CHECK(!dist.empty());
  entries_[key] = std::move(dist);
}

std::vector<double> StrategyProfile::dist(const InfoSetKey& key, int arity) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::vector<double>(arity, 1.0 / arity);
  MCCFR_CHECK_MSG(static_cast<int>(it->second.size()) == arity,
                  "arity mismatch for key " << key.str());
  return it->second;
}

StrategyProfile extract_average_profile(const Game& game, const RegretTable& table) {
  StrategyProfile profile;
  for (const auto& [key, legal] : enumerate_infosets_with_actions(game)) {
    profile.set(key, average_strategy(table, key, static_cast<int>(legal.size())));
  }
  return profile;
}

StrategyProfile extract_current_profile(const Game& game, const RegretTable& table) {
  StrategyProfile profile;
  for (const auto& [key, legal] : enumerate_infosets_with_actions(game)) {
    profile.set(key, current_strategy(table, key, static_cast<int>(legal.size())));
  }
  return profile;
}

void save_profile_text(std::ostream& os, const Game& game, const StrategyProfile& profile) {
  std::map<InfoSetKey, std::vector<Action>> legal_of;
  for (auto& [key, legal] : enumerate_infosets_with_actions(game)) legal_of[key] = legal;
  char buf[64];
  for (const auto& [key, dist] : profile.entries()) {
    auto it = legal_of.find(key);
    MCCFR_CHECK_MSG(it != legal_of.end(), "profile key not in game: " << key.str());
    MCCFR_CHECK(it->second.size() == dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", dist[i]);
      os << key.str() << "," << it->second[i] << "," << buf << "\n";
    }
  }
}

StrategyProfile load_profile_text(std::istream& is) {
  // Lines for one key are contiguous and already in alphabet order, so probs
  // can be appended positionally.
  StrategyProfile profile;
  std::string line;
  std::string current_key_text;
  InfoSetKey current_key;
  std::vector<double> dist;
  const auto flush = [&]() {
    if (!dist.empty()) profile.set(current_key, dist);
    dist.clear();
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto last = line.rfind(',');
    MCCFR_CHECK_MSG(last != std::string::npos, "bad profile line: " << line);
    const auto mid = line.rfind(',', last - 1);
    MCCFR_CHECK_MSG(mid != std::string::npos, "bad profile line: " << line);
    const std::string key_text = line.substr(0, mid);
    const double prob = std::stod(line.substr(last + 1));
    if (key_text != current_key_text) {
      flush();
      current_key_text = key_text;
      current_key = InfoSetKey::parse(key_text);
    }
    dist.push_back(prob);
  }
  flush();
  return profile;
}

}  // namespace mccfr
