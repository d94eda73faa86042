#include "mccfr/training.hpp"

#include <cmath>

#include "mccfr/check.hpp"

namespace mccfr {

void TrainingConfig::validate() const {
  MCCFR_CHECK_MSG(epsilon >= 0.0 && epsilon <= 1.0, "epsilon outside [0,1]");
  MCCFR_CHECK_MSG(tau_target >= 1, "tau_target must be >= 1");
  MCCFR_CHECK_MSG(tau_train >= 1, "tau_train must be >= 1");
  MCCFR_CHECK_MSG(batch_size >= 1, "batch_size must be >= 1");
  MCCFR_CHECK_MSG(lambda_variance >= 0.0, "lambda_variance must be >= 0");
  MCCFR_CHECK_MSG(huber_kappa > 0.0, "huber_kappa must be > 0");
  MCCFR_CHECK_MSG(learning_rate > 0.0, "learning_rate must be > 0");
  MCCFR_CHECK_MSG(grad_clip > 0.0, "grad_clip must be > 0");
  MCCFR_CHECK_MSG(alpha_warm >= 0.0 && alpha_warm <= 1.0, "alpha_warm outside [0,1]");
  MCCFR_CHECK_MSG(warm_start_burnin >= 0, "warm_start_burnin must be >= 0");
  MCCFR_CHECK_MSG(baseline_rho >= 0.0 && baseline_rho <= 1.0, "baseline_rho outside [0,1]");
}

double kl_divergence(std::span<const double> target, std::span<const double> model) {
  MCCFR_CHECK(target.size() == model.size());
  constexpr double kFloor = 1e-12;
  double kl = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] <= 0.0) continue;
    kl += target[i] * (std::log(target[i]) - std::log(std::max(model[i], kFloor)));
  }
  return kl;
}

double huber(double residual, double kappa) {
  const double a = std::abs(residual);
  if (a <= kappa) return 0.5 * residual * residual;
  return kappa * (a - 0.5 * kappa);
}

double huber_derivative(double residual, double kappa) {
  if (residual > kappa) return kappa;
  if (residual < -kappa) return -kappa;
  return residual;
}

std::vector<double> warm_start_strategy(std::span<const double> net_probs,
                                        std::span<const double> rm_probs, double alpha) {
  MCCFR_CHECK(net_probs.size() == rm_probs.size());
  MCCFR_CHECK(alpha >= 0.0 && alpha <= 1.0);
  std::vector<double> mixed(net_probs.size());
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    mixed[i] = alpha * net_probs[i] + (1.0 - alpha) * rm_probs[i];
  }
  return mixed;
}

TrainReport train_step(const ReplayBuffer& buffer, const ReplayBuffer::Batch& batch,
                       ResidualNet& strategy_net, Adam& strategy_opt,
                       ResidualNet& sampling_net, Adam& sampling_opt,
                       ResidualNet& variance_net, Adam& variance_opt,
                       const TrainingConfig& cfg) {
  MCCFR_CHECK(batch.indices.size() == batch.weights.size());
  MCCFR_CHECK(!batch.indices.empty());
  TrainReport report;

  double weight_sum = 0.0;
  for (double w : batch.weights) weight_sum += w;
  if (weight_sum == 0.0) {
    report.note = "all correction weights zero; step skipped";
    return report;
  }

  const double lambda = cfg.variance_objective ? cfg.lambda_variance : 0.0;
  const std::size_t batch_n = batch.indices.size();
  const double inv_n = 1.0 / static_cast<double>(batch_n);

  std::vector<double> grad_strategy(strategy_net.params().size(), 0.0);
  std::vector<double> grad_sampling(sampling_net.params().size(), 0.0);
  std::vector<double> grad_variance(variance_net.params().size(), 0.0);

  ResidualNet::Workspace ws;
  std::vector<double> dout;

  for (std::size_t j = 0; j < batch_n; ++j) {
    const Experience& e = buffer.at(batch.indices[j]);
    const double w = batch.weights[j];
    if (w == 0.0) continue;

    // Predicted variance of this sample, used by the coupled sampling
    // objective (as a fixed scale, no gradient through it) and by the
    // variance regression below.
    double predicted_var = 0.0;
    double variance_preact = 0.0;
    ResidualNet::Workspace ws_var;
    if (cfg.variance_objective) {
      variance_net.forward(e.features, ws_var);
      variance_preact = ws_var.out[0];
      predicted_var = softplus(variance_preact);
    }

    // Strategy net: w * KL(target || policy). d/dlogits = w * (policy - target)
    // on legal entries.
    {
      strategy_net.forward(e.features, ws);
      const std::vector<double> policy = masked_softmax(ws.out, e.legal);
      std::vector<double> policy_legal(e.legal.size());
      for (std::size_t i = 0; i < e.legal.size(); ++i) policy_legal[i] = policy[e.legal[i]];
      report.loss_strategy += inv_n * w * kl_divergence(e.target_strategy, policy_legal);
      dout.assign(strategy_net.topology().output, 0.0);
      for (std::size_t i = 0; i < e.legal.size(); ++i) {
        dout[e.legal[i]] = inv_n * w * (policy_legal[i] - e.target_strategy[i]);
      }
      strategy_net.backward(ws, dout, grad_strategy);
    }

    // Sampling net: the same imitation pull, scaled by the variance coupling.
    {
      const double couple =
          cfg.coupling == VarianceCoupling::kCoupled ? 1.0 + lambda * predicted_var : 1.0;
      sampling_net.forward(e.features, ws);
      const std::vector<double> policy = masked_softmax(ws.out, e.legal);
      std::vector<double> policy_legal(e.legal.size());
      for (std::size_t i = 0; i < e.legal.size(); ++i) policy_legal[i] = policy[e.legal[i]];
      report.loss_sampler += inv_n * w * kl_divergence(e.target_strategy, policy_legal);
      dout.assign(sampling_net.topology().output, 0.0);
      for (std::size_t i = 0; i < e.legal.size(); ++i) {
        dout[e.legal[i]] = inv_n * w * couple * (policy_legal[i] - e.target_strategy[i]);
      }
      sampling_net.backward(ws, dout, grad_sampling);
    }

    // Variance estimator: w * huber(predicted - W^2).
    if (cfg.variance_objective) {
      const double target_var = e.importance_weight * e.importance_weight;
      const double residual = predicted_var - target_var;
      report.loss_variance += inv_n * w * huber(residual, cfg.huber_kappa);
      const double dpre = inv_n * w * huber_derivative(residual, cfg.huber_kappa) /
                          (1.0 + std::exp(-variance_preact));
      dout.assign(1, dpre);
      variance_net.backward(ws_var, dout, grad_variance);
    }
  }

  if (!std::isfinite(report.loss_strategy) || !std::isfinite(report.loss_sampler) ||
      !std::isfinite(report.loss_variance)) {
    report.note = "non-finite loss; step skipped";
    report.loss_strategy = report.loss_sampler = report.loss_variance = 0.0;
    return report;
  }

  clip_gradient_norm(grad_strategy, cfg.grad_clip);
  clip_gradient_norm(grad_sampling, cfg.grad_clip);
  const auto strategy_layout = strategy_net.layout();
  const auto sampling_layout = sampling_net.layout();
  strategy_opt.step(strategy_net.params(), grad_strategy, &strategy_layout);
  sampling_opt.step(sampling_net.params(), grad_sampling, &sampling_layout);
  if (cfg.variance_objective) {
    clip_gradient_norm(grad_variance, cfg.grad_clip);
    const auto variance_layout = variance_net.layout();
    variance_opt.step(variance_net.params(), grad_variance, &variance_layout);
  }
  report.applied = true;
  return report;
}

bool maybe_update_targets(std::int64_t iteration, int tau, const ResidualNet& strategy_net,
                          ResidualNet& strategy_target, const ResidualNet& sampling_net,
                          ResidualNet& sampling_target) {
  MCCFR_CHECK(tau >= 1);
  if (iteration <= 0 || iteration % tau != 0) return false;
  copy_into_target(strategy_net, strategy_target);
  copy_into_target(sampling_net, sampling_target);
  return true;
}

}  // namespace mccfr
