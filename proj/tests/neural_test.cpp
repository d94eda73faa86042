#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "mccfr/check.hpp"
#include "mccfr/checkpoint.hpp"
#include "mccfr/net.hpp"
#include "mccfr/rng.hpp"

using namespace mccfr;

namespace {

NetTopology small_policy_topology() {
  NetTopology t;
  t.input = 5;
  t.width = 8;
  t.blocks = 2;
  t.bottleneck = 4;
  t.output = 3;
  t.head = HeadKind::kPolicy;
  return t;
}

// Cross-entropy of the masked policy against a fixed target over the legal
// actions; used to exercise backward() against finite differences.
double policy_loss(const ResidualNet& net, std::span<const double> x,
                   std::span<const Action> legal, std::span<const double> target) {
  const std::vector<double> probs = net.policy(x, legal);
  double loss = 0.0;
  for (std::size_t i = 0; i < legal.size(); ++i) {
    loss -= target[i] * std::log(probs[legal[i]]);
  }
  return loss;
}

double scalar_loss(const ResidualNet& net, std::span<const double> x, double y) {
  const double v = net.scalar(x);
  return 0.5 * (v - y) * (v - y);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("neural") {

TEST_CASE("parameter count matches the layout arithmetic") {
  NetTopology t;
  t.input = 3;
  t.width = 8;
  t.blocks = 2;
  t.bottleneck = 4;  // hidden = 2
  t.output = 2;
  // input proj 8*3+8, blocks 2*(2*8+2+8*2+8), head 2*8+2.
  CHECK(t.param_count() == 32 + 2 * 42 + 18);
  ResidualNet net(t);
  CHECK(static_cast<std::int64_t>(net.params().size()) == t.param_count());
  std::size_t covered = 0;
  for (const auto& span : net.layout()) covered += span.size;
  CHECK(covered == net.params().size());
}

TEST_CASE("a zero network is uniform over legal actions and ln 2 on the scalar head") {
  ResidualNet net(small_policy_topology());
  const std::vector<double> x = {0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<Action> legal = {0, 2};
  const std::vector<double> probs = net.policy(x, legal);
  CHECK(probs[0] == doctest::Approx(0.5));
  CHECK(probs[1] == 0.0);  // illegal entries are exactly zero
  CHECK(probs[2] == doctest::Approx(0.5));

  NetTopology st = small_policy_topology();
  st.output = 1;
  st.head = HeadKind::kScalar;
  ResidualNet scalar_net(st);
  CHECK(scalar_net.scalar(x) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("masked softmax and softplus closed forms") {
  const std::vector<double> logits = {1.0, -100.0, 1.0 + std::log(3.0)};
  const std::vector<Action> legal = {0, 2};
  const std::vector<double> probs = masked_softmax(logits, legal);
  CHECK(probs[0] == doctest::Approx(0.25));
  CHECK(probs[1] == 0.0);
  CHECK(probs[2] == doctest::Approx(0.75));

  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(softplus(50.0) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(softplus(-50.0) == doctest::Approx(std::exp(-50.0)).epsilon(1e-6));
}

TEST_CASE("random init scales weights by fan-in and zeroes biases and head") {
  Rng rng(9);
  const NetTopology topo = small_policy_topology();
  const ResidualNet net = ResidualNet::random_init(topo, rng);
  const auto spans = net.layout();
  for (const auto& span : spans) {
    const bool is_bias = span.name.find(".b") != std::string::npos;
    const bool is_head = span.name.rfind("head.", 0) == 0;
    for (std::size_t i = span.offset; i < span.offset + span.size; ++i) {
      if (is_bias || is_head) {
        CHECK(net.params()[i] == 0.0);
      }
    }
  }
  // Input projection weights bounded by 1/sqrt(input).
  const double bound = 1.0 / std::sqrt(static_cast<double>(topo.input));
  for (std::size_t i = 0; i < static_cast<std::size_t>(topo.width * topo.input); ++i) {
    CHECK(std::abs(net.params()[i]) <= bound);
  }

  Rng rng2(9);
  const ResidualNet again = ResidualNet::random_init(topo, rng2);
  bool identical = true;
  for (std::size_t i = 0; i < net.params().size(); ++i) {
    identical = identical && net.params()[i] == again.params()[i];
  }
  CHECK(identical);
}

TEST_CASE("a blockless network is the plain affine composition") {
  NetTopology t;
  t.input = 2;
  t.width = 2;
  t.blocks = 0;
  t.bottleneck = 1;
  t.output = 1;
  t.head = HeadKind::kPolicy;
  ResidualNet net(t);
  auto p = net.params();
  // x0 = Win x + bin with Win = [[1,2],[3,4]], bin = (0.5, -0.5).
  p[0] = 1.0; p[1] = 2.0; p[2] = 3.0; p[3] = 4.0;
  p[4] = 0.5; p[5] = -0.5;
  // head = [10, 20] * x0 + 1.
  p[6] = 10.0; p[7] = 20.0; p[8] = 1.0;
  const std::vector<double> x = {1.0, -1.0};
  // x0 = (1-2+0.5, 3-4-0.5) = (-0.5, -1.5); out = -5 - 30 + 1 = -34.
  CHECK(net.logits(x)[0] == doctest::Approx(-34.0));
}

TEST_CASE("policy gradients match central finite differences") {
  Rng rng(31);
  ResidualNet net = ResidualNet::random_init(small_policy_topology(), rng);
  // Nudge head weights off zero so the test covers a non-degenerate policy.
  auto params = net.params();
  for (std::size_t i = params.size() - 3 * 8 - 3; i < params.size(); ++i) {
    params[i] = rng.uniform(-0.5, 0.5);
  }
  const std::vector<double> x = {0.9, 0.1, 0.4, 0.7, 0.2};
  const std::vector<Action> legal = {0, 2};
  const std::vector<double> target = {0.3, 0.7};

  ResidualNet::Workspace ws;
  net.forward(x, ws);
  const std::vector<double> probs = masked_softmax(ws.out, legal);
  std::vector<double> dout(3, 0.0);
  for (std::size_t i = 0; i < legal.size(); ++i) {
    dout[legal[i]] = probs[legal[i]] - target[i];
  }
  std::vector<double> grad(net.params().size(), 0.0);
  net.backward(ws, dout, grad);

  const double h = 1e-5;
  double worst = 0.0;
  for (std::size_t i = 0; i < net.params().size(); ++i) {
    const double keep = net.params()[i];
    net.params()[i] = keep + h;
    const double up = policy_loss(net, x, legal, target);
    net.params()[i] = keep - h;
    const double down = policy_loss(net, x, legal, target);
    net.params()[i] = keep;
    const double fd = (up - down) / (2.0 * h);
    const double scale = std::max({std::abs(fd), std::abs(grad[i]), 1e-6});
    worst = std::max(worst, std::abs(fd - grad[i]) / scale);
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("scalar-head gradients match central finite differences") {
  Rng rng(32);
  NetTopology t = small_policy_topology();
  t.output = 1;
  t.head = HeadKind::kScalar;
  ResidualNet net = ResidualNet::random_init(t, rng);
  auto params = net.params();
  for (std::size_t i = params.size() - 8 - 1; i < params.size(); ++i) {
    params[i] = rng.uniform(-0.5, 0.5);
  }
  const std::vector<double> x = {0.2, 0.8, 0.5, 0.1, 0.6};
  const double y = 2.0;

  ResidualNet::Workspace ws;
  net.forward(x, ws);
  const double pre = ws.out[0];
  const double v = softplus(pre);
  const double sigmoid = 1.0 / (1.0 + std::exp(-pre));
  const std::vector<double> dout = {(v - y) * sigmoid};
  std::vector<double> grad(net.params().size(), 0.0);
  net.backward(ws, dout, grad);

  const double h = 1e-5;
  double worst = 0.0;
  for (std::size_t i = 0; i < net.params().size(); ++i) {
    const double keep = net.params()[i];
    net.params()[i] = keep + h;
    const double up = scalar_loss(net, x, y);
    net.params()[i] = keep - h;
    const double down = scalar_loss(net, x, y);
    net.params()[i] = keep;
    const double fd = (up - down) / (2.0 * h);
    const double scale = std::max({std::abs(fd), std::abs(grad[i]), 1e-6});
    worst = std::max(worst, std::abs(fd - grad[i]) / scale);
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("gradient clipping rescales to the cap and reports the original norm") {
  std::vector<double> grad = {3.0, 4.0};  // norm 5
  CHECK(clip_gradient_norm(grad, 10.0) == doctest::Approx(5.0));
  CHECK(grad[0] == doctest::Approx(3.0));
  CHECK(clip_gradient_norm(grad, 1.0) == doctest::Approx(5.0));
  CHECK(std::sqrt(grad[0] * grad[0] + grad[1] * grad[1]) == doctest::Approx(1.0));
}

TEST_CASE("the optimizer reproduces the two-step hand computation") {
  // One parameter, gradient fixed at 1, lr 0.1: bias correction makes both of
  // the first two steps move by almost exactly lr.
  Adam opt(1, 0.1);
  std::vector<double> w = {1.0};
  const std::vector<double> g = {1.0};
  opt.step(w, g);
  CHECK(w[0] == doctest::Approx(0.9).epsilon(1e-6));
  opt.step(w, g);
  CHECK(w[0] == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(opt.steps() == 2);
}

TEST_CASE("the optimizer names the parameter block of a bad gradient") {
  Rng rng(4);
  ResidualNet net = ResidualNet::random_init(small_policy_topology(), rng);
  Adam opt(net.params().size());
  std::vector<double> grad(net.params().size(), 0.0);
  const auto layout = net.layout();
  grad[layout.back().offset] = std::nan("");  // head bias block
  bool threw = false;
  try {
    opt.step(net.params(), grad, &layout);
  } catch (const Error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("head.b") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("target copies replicate parameters and reject shape mismatches") {
  Rng rng(6);
  const ResidualNet main = ResidualNet::random_init(small_policy_topology(), rng);
  ResidualNet target(small_policy_topology());
  copy_into_target(main, target);
  bool identical = true;
  for (std::size_t i = 0; i < main.params().size(); ++i) {
    identical = identical && main.params()[i] == target.params()[i];
  }
  CHECK(identical);

  NetTopology other = small_policy_topology();
  other.width = 16;
  ResidualNet wrong(other);
  CHECK_THROWS_AS(copy_into_target(main, wrong), Error);
}

TEST_CASE("network snapshots round-trip bit-exactly and validate topology") {
  Rng rng(11);
  const ResidualNet net = ResidualNet::random_init(small_policy_topology(), rng);
  const auto path = temp_file("mccfr_net_roundtrip.net");
  save_net(path.string(), net);

  const ResidualNet back = load_net(path.string());
  CHECK(back.topology() == net.topology());
  bool identical = true;
  for (std::size_t i = 0; i < net.params().size(); ++i) {
    identical = identical && net.params()[i] == back.params()[i];
  }
  CHECK(identical);

  NetTopology other = small_policy_topology();
  other.blocks = 3;
  CHECK_THROWS_AS(load_net(path.string(), other), Error);
  CHECK_NOTHROW(load_net(path.string(), net.topology()));

  // Corrupt the magic bytes; the loader must refuse.
  {
    std::FILE* fp = std::fopen(path.string().c_str(), "r+b");
    REQUIRE(fp != nullptr);
    std::fputc('X', fp);
    std::fclose(fp);
  }
  CHECK_THROWS_AS(load_net(path.string()), Error);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
