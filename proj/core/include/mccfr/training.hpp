#pragma once

#include <span>
#include <string>
#include <vector>

#include "mccfr/baseline.hpp"
#include "mccfr/net.hpp"
#include "mccfr/replay.hpp"

namespace mccfr {

// How the variance objective reaches the sampling network. The penalty form
// treats the predicted variance purely as a monitored penalty (the variance
// estimator input does not depend on the sampling network, so no gradient
// flows into it). The coupled form scales each sample's imitation gradient by
// (1 + lambda * predicted variance), pulling the sampler harder toward the
// target strategy exactly where sampling mismatch is predicted to be costly.
// Both collapse to pure imitation at lambda = 0.
enum class VarianceCoupling { kCoupled, kPenalty };

// Priority signal recorded with each experience. kDisagreement scores a
// sample by |sampled action value| times the gap between the strategy net and
// the target strategy on the sampled action; kMagnitude uses the absolute
// weighted regret of the sampled action.
enum class TdErrorMode { kDisagreement, kMagnitude };

struct TrainingConfig {
  // Component switches.
  bool target_nets = true;
  bool exploration = true;
  bool variance_objective = true;
  bool prioritized_replay = true;
  bool baseline_subtraction = true;
  bool warm_start = true;

  // Sampling and update cadence.
  double epsilon = 0.1;        // exploration mix-in
  int tau_target = 100;        // iterations between target refreshes
  int tau_train = 10;          // iterations between gradient steps
  int batch_size = 128;

  // Objectives.
  double lambda_variance = 0.1;
  double huber_kappa = 1.0;
  VarianceCoupling coupling = VarianceCoupling::kCoupled;
  TdErrorMode td_mode = TdErrorMode::kDisagreement;

  // Optimization.
  double learning_rate = 1e-3;
  double grad_clip = 10.0;

  // Warm start.
  double alpha_warm = 0.2;
  int warm_start_burnin = 500;  // iterations before mixing begins

  // Baseline.
  double baseline_rho = 0.05;

  void validate() const;
};

// KL(target || model) over one distribution pair; model probabilities are
// floored at 1e-12 inside the log so zero-probability model entries stay
// finite. Zero-probability target entries contribute nothing.
double kl_divergence(std::span<const double> target, std::span<const double> model);

double huber(double residual, double kappa);
double huber_derivative(double residual, double kappa);

// alpha * net + (1 - alpha) * rm, elementwise over legal positions.
std::vector<double> warm_start_strategy(std::span<const double> net_probs,
                                        std::span<const double> rm_probs, double alpha);

struct TrainReport {
  double loss_strategy = 0.0;  // imitation loss of the strategy net
  double loss_sampler = 0.0;   // imitation loss of the sampling net
  double loss_variance = 0.0;  // Huber loss of the variance estimator
  bool applied = false;        // false when skipped (empty weights, bad loss)
  std::string note;
};

// One gradient step on the three networks from a replay batch:
//  - strategy net: correction-weighted imitation of the stored targets,
//  - sampling net: the same imitation signal, coupling-scaled by the variance
//    objective,
//  - variance net: correction-weighted Huber regression of predicted variance
//    onto the squared importance weights (skipped when the variance objective
//    is off).
// Gradients are mean-normalized over the batch, norm-clipped, then applied.
// If every correction weight is zero, or any loss is non-finite, the step is
// skipped and the report says so.
TrainReport train_step(const ReplayBuffer& buffer, const ReplayBuffer::Batch& batch,
                       ResidualNet& strategy_net, Adam& strategy_opt,
                       ResidualNet& sampling_net, Adam& sampling_opt,
                       ResidualNet& variance_net, Adam& variance_opt,
                       const TrainingConfig& cfg);

// Copies each main network over its target copy when the iteration count is a
// positive multiple of tau. Returns true when a refresh happened.
bool maybe_update_targets(std::int64_t iteration, int tau, const ResidualNet& strategy_net,
                          ResidualNet& strategy_target, const ResidualNet& sampling_net,
                          ResidualNet& sampling_target);

}  // namespace mccfr
