#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

namespace mccfr {

// Shannon entropy -sum p ln p of a distribution (natural log, 0 ln 0 = 0).
double support_entropy(std::span<const double> probs);

// Kish effective sample size (sum w)^2 / sum w^2 of a weight collection.
double effective_sample_size(std::span<const double> weights);

struct WeightStats {
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n-1 denominator; 0 when n < 2)
  double max = 0.0;
};
WeightStats weight_stats(std::span<const double> weights);

// Mean L1 distance between two matched collections of distributions; 0 exactly
// when nothing moved.
double mean_l1_drift(const std::vector<std::vector<double>>& previous,
                     const std::vector<std::vector<double>>& current);

// Per-snapshot health metrics of a run.
struct DiagnosticSnapshot {
  std::int64_t iteration = 0;
  WeightStats weights;              // over the recent trajectory-weight window
  double ess = 0.0;                 // of the same window
  double entropy_mean = 0.0;        // mixed sampling policy over all infosets
  double disagreement_mean = 0.0;   // KL(regret-matching || strategy net), averaged
  double target_drift = 0.0;        // mean L1 move of collection-policy predictions
                                    // since the previous snapshot
  double exploitability_avg = 0.0;      // average strategy
  double exploitability_current = 0.0;  // current regret-matching strategy
};

// Rolling window of recent trajectory weights plus the previous snapshot's
// prediction set for drift measurement.
class DiagnosticTracker {
 public:
  explicit DiagnosticTracker(std::size_t window);

  void record_weight(double w);
  WeightStats window_stats() const;
  double window_ess() const;
  std::size_t window_size() const { return weights_.size(); }

  // Compares against the previously supplied prediction set and stores the
  // new one. The first call returns 0.
  double drift_and_store(std::vector<std::vector<double>> predictions);

 private:
  std::size_t window_;
  std::deque<double> weights_;
  std::vector<std::vector<double>> previous_predictions_;
  bool has_previous_ = false;
};

}  // namespace mccfr
