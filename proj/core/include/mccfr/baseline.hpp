#pragma once

#include <map>
#include <span>
#include <vector>

#include "mccfr/game.hpp"

namespace mccfr {

// Per-(infoset, action) scalar baselines maintained as exponential moving
// averages of observed per-action update values. Used as a control variate on
// importance-weighted updates.
class BaselineTable {
 public:
  // Row for a key, zero-initialized on first access.
  std::vector<double>& row(const InfoSetKey& key, int arity);
  // Baseline value; 0 for never-seen keys.
  double value(const InfoSetKey& key, int action_index) const;
  // b <- (1-rho)*b + rho*sample, per action.
  void ema_update(const InfoSetKey& key, std::span<const double> sample, double rho);

  std::size_t size() const { return rows_.size(); }

 private:
  std::map<InfoSetKey, std::vector<double>> rows_;
};

// Control-variate form of a weighted sample: (u - b) * w + b. With b = 0 this
// is the plain weighted value w*u; with b = u it returns u exactly. The
// correction term b*(1 - w) has zero mean whenever E[w] = 1 and b does not
// depend on the sample.
double apply_baseline(double u, double w, double b);

}  // namespace mccfr
