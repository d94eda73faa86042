#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mccfr/game.hpp"
#include "mccfr/rng.hpp"

namespace mccfr {

enum class HeadKind : std::uint32_t {
  kPolicy = 0,  // logits for a masked softmax over the action alphabet
  kScalar = 1,  // single softplus output
};

struct NetTopology {
  int input = 0;
  int width = 0;
  int blocks = 0;
  int bottleneck = 4;  // hidden width of a block = width / bottleneck
  int output = 0;
  HeadKind head = HeadKind::kPolicy;

  int hidden() const { return width / bottleneck; }
  std::int64_t param_count() const;
  void validate() const;
  bool operator==(const NetTopology&) const = default;
};

// Residual multilayer perceptron over a flat parameter vector:
//   x0 = Win*x + bin
//   yk = y(k-1) + W2k * relu(W1k * y(k-1) + b1k) + b2k        (k = 1..blocks)
//   out = Whead * yK + bhead
// The flat layout (input projection, blocks in order, head) makes optimizer
// state, gradient checks, target copies and serialization uniform.
class ResidualNet {
 public:
  struct Workspace {
    std::vector<double> x;
    std::vector<double> x0;
    std::vector<std::vector<double>> u;  // block pre-activations
    std::vector<std::vector<double>> h;  // block hidden activations
    std::vector<std::vector<double>> y;  // block outputs
    std::vector<double> out;             // raw head outputs
  };

  struct BlockSpan {
    std::string name;
    std::size_t offset = 0;
    std::size_t size = 0;
  };

  explicit ResidualNet(const NetTopology& topo);  // all parameters zero

  // Fan-in-scaled uniform weights, zero biases, and a zero head so the policy
  // head starts uniform and the scalar head starts at softplus(0).
  static ResidualNet random_init(const NetTopology& topo, Rng& rng);

  const NetTopology& topology() const { return topo_; }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  void forward(std::span<const double> x, Workspace& ws) const;
  std::vector<double> logits(std::span<const double> x) const;

  // Masked softmax over the full action alphabet: illegal entries are exactly
  // zero, legal entries are positive and sum to one.
  std::vector<double> policy(std::span<const double> x, std::span<const Action> legal) const;
  // Same distribution restricted to the legal positions.
  std::vector<double> policy_legal(std::span<const double> x,
                                   std::span<const Action> legal) const;
  // Softplus of the single raw output (head kind kScalar).
  double scalar(std::span<const double> x) const;

  // Accumulates dLoss/dparams into `grad` given dLoss/d(raw outputs) and the
  // workspace of the matching forward pass.
  void backward(const Workspace& ws, std::span<const double> dout,
                std::span<double> grad) const;

  // Named parameter blocks in layout order, for diagnostics and per-block
  // tests.
  std::vector<BlockSpan> layout() const;

 private:
  NetTopology topo_;
  std::vector<double> params_;
  std::size_t off_in_w_ = 0, off_in_b_ = 0, off_head_w_ = 0, off_head_b_ = 0;
  std::vector<std::size_t> off_w1_, off_b1_, off_w2_, off_b2_;
};

std::vector<double> masked_softmax(std::span<const double> logits,
                                   std::span<const Action> legal);
double softplus(double x);

// Rescales the gradient to at most `max_norm` (Euclidean); returns the norm
// before clipping.
double clip_gradient_norm(std::span<double> grad, double max_norm);

// Adaptive-moment optimizer with bias correction.
class Adam {
 public:
  explicit Adam(std::size_t n, double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8);

  // One descent step. Throws naming the offending parameter block (when a
  // layout is supplied) if the gradient or the updated parameters are not
  // finite.
  void step(std::span<double> params, std::span<const double> grad,
            const std::vector<ResidualNet::BlockSpan>* blocks = nullptr);

  std::int64_t steps() const { return t_; }
  double learning_rate() const { return lr_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::int64_t t_ = 0;
  std::vector<double> m_, v_;
};

// Copies main-network parameters over the target copy; topologies must match.
void copy_into_target(const ResidualNet& main, ResidualNet& target);

}  // namespace mccfr
