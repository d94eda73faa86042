#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "mccfr/game.hpp"
#include "mccfr/rng.hpp"

namespace mccfr {

// One sampled decision point stored for network training. The priority signal
// is fixed at push time and never revised.
struct Experience {
  std::vector<double> features;
  std::vector<double> target_strategy;  // over legal positions
  std::vector<Action> legal;            // alphabet ids, defines the mask
  double importance_weight = 1.0;       // trajectory weight W at collection
  double td_error = 0.0;                // priority signal
  std::int64_t iteration = 0;
};

// Bounded FIFO store with priority-proportional sampling. Priorities are
// p_i = (|td_error_i| + eps)^alpha, normalized over the buffer; alpha = 0
// degenerates to uniform sampling. Batches are drawn with replacement and
// carry importance-correction weights w_i = (N * p_i)^-beta, normalized by the
// largest weight in the batch.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, double alpha, double eps);

  void push(Experience e);  // evicts the oldest entry once full

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Experience& at(std::size_t i) const { return items_[i]; }

  double alpha() const { return alpha_; }
  void set_alpha(double alpha);

  // Normalized sampling probabilities over the current contents (oldest
  // first).
  std::vector<double> probabilities() const;

  // Unnormalized correction weight (N * p_i)^-beta of entry i.
  double correction_weight(std::size_t i, double beta) const;

  struct Batch {
    std::vector<std::size_t> indices;
    std::vector<double> weights;  // max-normalized correction weights
  };
  Batch sample(std::size_t batch_size, double beta, Rng& rng) const;

 private:
  std::size_t capacity_;
  double alpha_;
  double eps_;
  std::deque<Experience> items_;
};

// Linear annealing of the correction exponent from 0 at iteration 0 to 1 at
// the final iteration.
double annealed_beta(std::int64_t iteration, std::int64_t total_iterations);

}  // namespace mccfr
