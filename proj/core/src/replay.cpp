#include "mccfr/replay.hpp"

#include <algorithm>
#include <cmath>

#include "mccfr/check.hpp"

namespace mccfr {

ReplayBuffer::ReplayBuffer(std::size_t capacity, double alpha, double eps)
    : capacity_(capacity), alpha_(alpha), eps_(eps) {
  MCCFR_CHECK(capacity > 0);
  MCCFR_CHECK(alpha >= 0.0);
  MCCFR_CHECK(eps > 0.0);
}

void ReplayBuffer::push(Experience e) {
  MCCFR_CHECK(!e.legal.empty());
  MCCFR_CHECK(e.target_strategy.size() == e.legal.size());
  MCCFR_CHECK_MSG(std::isfinite(e.td_error), "non-finite priority signal");
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(std::move(e));
}

void ReplayBuffer::set_alpha(double alpha) {
  MCCFR_CHECK(alpha >= 0.0);
  alpha_ = alpha;
}

std::vector<double> ReplayBuffer::probabilities() const {
  std::vector<double> p(items_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    p[i] = std::pow(std::abs(items_[i].td_error) + eps_, alpha_);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

double ReplayBuffer::correction_weight(std::size_t i, double beta) const {
  MCCFR_CHECK(i < items_.size());
  const std::vector<double> p = probabilities();
  const double n = static_cast<double>(items_.size());
  return std::pow(n * p[i], -beta);
}

ReplayBuffer::Batch ReplayBuffer::sample(std::size_t batch_size, double beta,
                                         Rng& rng) const {
  MCCFR_CHECK_MSG(!items_.empty(), "sampling from an empty replay buffer");
  MCCFR_CHECK(batch_size > 0);
  MCCFR_CHECK(beta >= 0.0 && beta <= 1.0);

  const std::vector<double> p = probabilities();
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }

  Batch batch;
  batch.indices.resize(batch_size);
  batch.weights.resize(batch_size);
  const double n = static_cast<double>(items_.size());
  double max_w = 0.0;
  for (std::size_t j = 0; j < batch_size; ++j) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        it == cdf.end() ? p.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
    batch.indices[j] = idx;
    batch.weights[j] = std::pow(n * p[idx], -beta);
    max_w = std::max(max_w, batch.weights[j]);
  }
  MCCFR_CHECK(max_w > 0.0);
  for (double& w : batch.weights) w /= max_w;
  return batch;
}

double annealed_beta(std::int64_t iteration, std::int64_t total_iterations) {
  MCCFR_CHECK(total_iterations > 0);
  if (iteration <= 0) return 0.0;
  if (iteration >= total_iterations) return 1.0;
  return static_cast<double>(iteration) / static_cast<double>(total_iterations);
}

}  // namespace mccfr
