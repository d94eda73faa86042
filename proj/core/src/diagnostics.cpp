#include "mccfr/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mccfr/check.hpp"

namespace mccfr {

double support_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    MCCFR_CHECK_MSG(p >= 0.0, "negative probability");
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double effective_sample_size(std::span<const double> weights) {
  MCCFR_CHECK(!weights.empty());
  double sum = 0.0, sum_sq = 0.0;
  for (double w : weights) {
    MCCFR_CHECK_MSG(w >= 0.0, "negative weight");
    sum += w;
    sum_sq += w * w;
  }
  MCCFR_CHECK_MSG(sum_sq > 0.0, "all weights zero");
  return sum * sum / sum_sq;
}

WeightStats weight_stats(std::span<const double> weights) {
  MCCFR_CHECK(!weights.empty());
  WeightStats stats;
  const double n = static_cast<double>(weights.size());
  for (double w : weights) {
    stats.mean += w;
    stats.max = std::max(stats.max, w);
  }
  stats.mean /= n;
  if (weights.size() >= 2) {
    double sq = 0.0;
    for (double w : weights) sq += (w - stats.mean) * (w - stats.mean);
    stats.variance = sq / (n - 1.0);
  }
  return stats;
}

double mean_l1_drift(const std::vector<std::vector<double>>& previous,
                     const std::vector<std::vector<double>>& current) {
  MCCFR_CHECK(previous.size() == current.size());
  MCCFR_CHECK(!previous.empty());
  double total = 0.0;
  for (std::size_t i = 0; i < previous.size(); ++i) {
    MCCFR_CHECK(previous[i].size() == current[i].size());
    for (std::size_t j = 0; j < previous[i].size(); ++j) {
      total += std::abs(previous[i][j] - current[i][j]);
    }
  }
  return total / static_cast<double>(previous.size());
}

DiagnosticTracker::DiagnosticTracker(std::size_t window) : window_(window) {
  MCCFR_CHECK(window > 0);
}

void DiagnosticTracker::record_weight(double w) {
  MCCFR_CHECK_MSG(std::isfinite(w) && w >= 0.0, "bad trajectory weight");
  if (weights_.size() == window_) weights_.pop_front();
  weights_.push_back(w);
}

WeightStats DiagnosticTracker::window_stats() const {
  const std::vector<double> w(weights_.begin(), weights_.end());
  return weight_stats(w);
}

double DiagnosticTracker::window_ess() const {
  const std::vector<double> w(weights_.begin(), weights_.end());
  return effective_sample_size(w);
}

double DiagnosticTracker::drift_and_store(std::vector<std::vector<double>> predictions) {
  double drift = 0.0;
  if (has_previous_) drift = mean_l1_drift(previous_predictions_, predictions);
  previous_predictions_ = std::move(predictions);
  has_previous_ = true;
  return drift;
}

}  // namespace mccfr
