#include "mccfr/net.hpp"

#include <cmath>
#include <cstddef>

#include "mccfr/check.hpp"

namespace mccfr {

std::int64_t NetTopology::param_count() const {
  const std::int64_t w = width, in = input, out = output, hid = hidden();
  return w * in + w + static_cast<std::int64_t>(blocks) * (hid * w + hid + w * hid + w) +
         out * w + out;
}

void NetTopology::validate() const {
  MCCFR_CHECK_MSG(input > 0 && width > 0 && blocks >= 0 && output > 0,
                  "bad topology dimensions");
  MCCFR_CHECK_MSG(bottleneck > 0 && width % bottleneck == 0 && hidden() > 0,
                  "width " << width << " not divisible into bottleneck " << bottleneck);
  if (head == HeadKind::kScalar) MCCFR_CHECK_MSG(output == 1, "scalar head needs output 1");
}

namespace {

// y = W*x + b with W row-major [rows x cols].
void affine(const double* W, const double* b, const double* x, double* y, int rows,
            int cols) {
  for (int r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* row = W + static_cast<std::size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

// dW += d (x) x^T, db += d.
void grad_params(const double* d, const double* x, double* dW, double* db, int rows,
                 int cols) {
  for (int r = 0; r < rows; ++r) {
    double* row = dW + static_cast<std::size_t>(r) * cols;
    const double dr = d[r];
    for (int c = 0; c < cols; ++c) row[c] += dr * x[c];
    db[r] += dr;
  }
}

// xg += W^T * d.
void grad_input(const double* W, const double* d, double* xg, int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    const double* row = W + static_cast<std::size_t>(r) * cols;
    const double dr = d[r];
    for (int c = 0; c < cols; ++c) xg[c] += row[c] * dr;
  }
}

}  // namespace

ResidualNet::ResidualNet(const NetTopology& topo) : topo_(topo) {
  topo_.validate();
  const std::size_t w = topo_.width, in = topo_.input, out = topo_.output,
                    hid = topo_.hidden();
  std::size_t off = 0;
  off_in_w_ = off;
  off += w * in;
  off_in_b_ = off;
  off += w;
  for (int k = 0; k < topo_.blocks; ++k) {
    off_w1_.push_back(off);
    off += hid * w;
    off_b1_.push_back(off);
    off += hid;
    off_w2_.push_back(off);
    off += w * hid;
    off_b2_.push_back(off);
    off += w;
  }
  off_head_w_ = off;
  off += out * w;
  off_head_b_ = off;
  off += out;
  MCCFR_CHECK(off == static_cast<std::size_t>(topo_.param_count()));
  params_.assign(off, 0.0);
}

ResidualNet ResidualNet::random_init(const NetTopology& topo, Rng& rng) {
  ResidualNet net(topo);
  const auto fill = [&](std::size_t offset, int rows, int cols) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    for (std::size_t i = 0; i < static_cast<std::size_t>(rows) * cols; ++i) {
      net.params_[offset + i] = rng.uniform(-bound, bound);
    }
  };
  fill(net.off_in_w_, topo.width, topo.input);
  for (int k = 0; k < topo.blocks; ++k) {
    fill(net.off_w1_[k], topo.hidden(), topo.width);
    fill(net.off_w2_[k], topo.width, topo.hidden());
  }
  // Head weights and all biases stay zero: the policy head starts uniform over
  // legal actions and the scalar head starts at softplus(0) = ln 2.
  return net;
}

void ResidualNet::forward(std::span<const double> x, Workspace& ws) const {
  MCCFR_CHECK_MSG(static_cast<int>(x.size()) == topo_.input,
                  "input size " << x.size() << " != " << topo_.input);
  const double* p = params_.data();
  const int w = topo_.width, hid = topo_.hidden();

  ws.x.assign(x.begin(), x.end());
  ws.x0.resize(w);
  affine(p + off_in_w_, p + off_in_b_, ws.x.data(), ws.x0.data(), w, topo_.input);

  ws.u.resize(topo_.blocks);
  ws.h.resize(topo_.blocks);
  ws.y.resize(topo_.blocks);
  const double* prev = ws.x0.data();
  for (int k = 0; k < topo_.blocks; ++k) {
    ws.u[k].resize(hid);
    ws.h[k].resize(hid);
    ws.y[k].resize(w);
    affine(p + off_w1_[k], p + off_b1_[k], prev, ws.u[k].data(), hid, w);
    for (int i = 0; i < hid; ++i) ws.h[k][i] = ws.u[k][i] > 0.0 ? ws.u[k][i] : 0.0;
    affine(p + off_w2_[k], p + off_b2_[k], ws.h[k].data(), ws.y[k].data(), w, hid);
    for (int i = 0; i < w; ++i) ws.y[k][i] += prev[i];
    prev = ws.y[k].data();
  }

  ws.out.resize(topo_.output);
  affine(p + off_head_w_, p + off_head_b_, prev, ws.out.data(), topo_.output, w);
}

std::vector<double> ResidualNet::logits(std::span<const double> x) const {
  Workspace ws;
  forward(x, ws);
  return ws.out;
}

std::vector<double> ResidualNet::policy(std::span<const double> x,
                                        std::span<const Action> legal) const {
  MCCFR_CHECK(topo_.head == HeadKind::kPolicy);
  return masked_softmax(logits(x), legal);
}

std::vector<double> ResidualNet::policy_legal(std::span<const double> x,
                                              std::span<const Action> legal) const {
  const std::vector<double> full = policy(x, legal);
  std::vector<double> dist(legal.size());
  for (std::size_t i = 0; i < legal.size(); ++i) dist[i] = full[legal[i]];
  return dist;
}

double ResidualNet::scalar(std::span<const double> x) const {
  MCCFR_CHECK(topo_.head == HeadKind::kScalar);
  return softplus(logits(x)[0]);
}

void ResidualNet::backward(const Workspace& ws, std::span<const double> dout,
                           std::span<double> grad) const {
  MCCFR_CHECK(static_cast<int>(dout.size()) == topo_.output);
  MCCFR_CHECK(grad.size() == params_.size());
  const double* p = params_.data();
  const int w = topo_.width, hid = topo_.hidden();

  const double* last =
      topo_.blocks > 0 ? ws.y[topo_.blocks - 1].data() : ws.x0.data();
  grad_params(dout.data(), last, grad.data() + off_head_w_, grad.data() + off_head_b_,
              topo_.output, w);
  std::vector<double> dy(w, 0.0);
  grad_input(p + off_head_w_, dout.data(), dy.data(), topo_.output, w);

  std::vector<double> du(hid);
  for (int k = topo_.blocks - 1; k >= 0; --k) {
    const double* prev = k > 0 ? ws.y[k - 1].data() : ws.x0.data();
    grad_params(dy.data(), ws.h[k].data(), grad.data() + off_w2_[k],
                grad.data() + off_b2_[k], w, hid);
    std::fill(du.begin(), du.end(), 0.0);
    grad_input(p + off_w2_[k], dy.data(), du.data(), w, hid);
    for (int i = 0; i < hid; ++i) {
      if (ws.u[k][i] <= 0.0) du[i] = 0.0;
    }
    grad_params(du.data(), prev, grad.data() + off_w1_[k], grad.data() + off_b1_[k], hid,
                w);
    // Skip connection: the incoming dy flows through unchanged, plus the
    // bottleneck path contribution.
    grad_input(p + off_w1_[k], du.data(), dy.data(), hid, w);
  }

  grad_params(dy.data(), ws.x.data(), grad.data() + off_in_w_, grad.data() + off_in_b_, w,
              topo_.input);
}

std::vector<ResidualNet::BlockSpan> ResidualNet::layout() const {
  const std::size_t w = topo_.width, hid = topo_.hidden();
  std::vector<BlockSpan> spans;
  spans.push_back({"in.W", off_in_w_, w * static_cast<std::size_t>(topo_.input)});
  spans.push_back({"in.b", off_in_b_, w});
  for (int k = 0; k < topo_.blocks; ++k) {
    const std::string prefix = "block" + std::to_string(k) + ".";
    spans.push_back({prefix + "W1", off_w1_[k], hid * w});
    spans.push_back({prefix + "b1", off_b1_[k], hid});
    spans.push_back({prefix + "W2", off_w2_[k], w * hid});
    spans.push_back({prefix + "b2", off_b2_[k], w});
  }
  spans.push_back({"head.W", off_head_w_, static_cast<std::size_t>(topo_.output) * w});
  spans.push_back({"head.b", off_head_b_, static_cast<std::size_t>(topo_.output)});
  return spans;
}

std::vector<double> masked_softmax(std::span<const double> logits,
                                   std::span<const Action> legal) {
  MCCFR_CHECK_MSG(!legal.empty(), "no legal actions");
  double max_logit = -1e300;
  for (Action a : legal) {
    MCCFR_CHECK_MSG(a >= 0 && a < static_cast<Action>(logits.size()),
                    "legal action " << a << " outside alphabet");
    max_logit = std::max(max_logit, logits[a]);
  }
  std::vector<double> probs(logits.size(), 0.0);
  double sum = 0.0;
  for (Action a : legal) {
    probs[a] = std::exp(logits[a] - max_logit);
    sum += probs[a];
  }
  for (Action a : legal) probs[a] /= sum;
  return probs;
}

double softplus(double x) {
  // Stable in both tails: ln(1 + e^x) = max(x, 0) + ln(1 + e^-|x|).
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double clip_gradient_norm(std::span<double> grad, double max_norm) {
  MCCFR_CHECK(max_norm > 0.0);
  double sq = 0.0;
  for (double g : grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grad) g *= scale;
  }
  return norm;
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {
  MCCFR_CHECK(lr > 0.0 && beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0);
}

namespace {
[[noreturn]] void report_bad_value(const char* what, std::size_t index,
                                   const std::vector<ResidualNet::BlockSpan>* blocks) {
  std::string where = "parameter index " + std::to_string(index);
  if (blocks) {
    for (const auto& b : *blocks) {
      if (index >= b.offset && index < b.offset + b.size) {
        where = "block '" + b.name + "' (index " + std::to_string(index) + ")";
        break;
      }
    }
  }
  throw Error(std::string("optimizer: non-finite ") + what + " in " + where);
}
}  // namespace

void Adam::step(std::span<double> params, std::span<const double> grad,
                const std::vector<ResidualNet::BlockSpan>* blocks) {
  MCCFR_CHECK(params.size() == m_.size() && grad.size() == m_.size());
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!std::isfinite(grad[i])) report_bad_value("gradient", i, blocks);
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
    if (!std::isfinite(params[i])) report_bad_value("parameter", i, blocks);
  }
}

void copy_into_target(const ResidualNet& main, ResidualNet& target) {
  MCCFR_CHECK_MSG(main.topology() == target.topology(),
                  "target copy with mismatched topology");
  std::copy(main.params().begin(), main.params().end(), target.params().begin());
}

}  // namespace mccfr
