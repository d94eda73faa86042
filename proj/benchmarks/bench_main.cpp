#include <benchmark/benchmark.h>

#include <memory>

#include "mccfr/exact_eval.hpp"
#include "mccfr/harness.hpp"
#include "mccfr/kuhn.hpp"
#include "mccfr/leduc.hpp"
#include "mccfr/net.hpp"
#include "mccfr/os_mccfr.hpp"
#include "mccfr/regret_table.hpp"
#include "mccfr/rng.hpp"
#include "mccfr/trajectory.hpp"

namespace {

using namespace mccfr;

std::unique_ptr<Game> game_for(int index) {
  return index == 0 ? std::unique_ptr<Game>(std::make_unique<KuhnGame>())
                    : std::unique_ptr<Game>(std::make_unique<LeducGame>());
}

void BM_SampleTrajectory(benchmark::State& state) {
  const auto game = game_for(static_cast<int>(state.range(0)));
  const StrategyProfile uniform;
  const PolicyLookup probe = [&](const InfoSetKey& key, std::span<const Action> legal) {
    return uniform.dist(key, static_cast<int>(legal.size()));
  };
  Rng deal(1), act(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_trajectory(*game, probe, probe, 0.1, deal, act));
  }
}
BENCHMARK(BM_SampleTrajectory)->Arg(0)->Arg(1);

void BM_TabularIteration(benchmark::State& state) {
  const auto game = game_for(static_cast<int>(state.range(0)));
  RegretTable table;
  Rng deal(1), act(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tabular_os_iteration(*game, table, 0.1, deal, act));
  }
}
BENCHMARK(BM_TabularIteration)->Arg(0)->Arg(1);

void BM_NetForward(benchmark::State& state) {
  NetTopology topo;
  topo.input = 30;
  topo.width = static_cast<int>(state.range(0));
  topo.blocks = 4;
  topo.bottleneck = 4;
  topo.output = 3;
  topo.head = HeadKind::kPolicy;
  Rng rng(7);
  const ResidualNet net = ResidualNet::random_init(topo, rng);
  std::vector<double> x(30);
  for (double& v : x) v = rng.uniform();
  const std::vector<Action> legal = {0, 1, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.policy_legal(x, legal));
  }
}
BENCHMARK(BM_NetForward)->Arg(64)->Arg(128);

void BM_NetBackward(benchmark::State& state) {
  NetTopology topo;
  topo.input = 30;
  topo.width = static_cast<int>(state.range(0));
  topo.blocks = 4;
  topo.bottleneck = 4;
  topo.output = 3;
  topo.head = HeadKind::kPolicy;
  Rng rng(7);
  const ResidualNet net = ResidualNet::random_init(topo, rng);
  std::vector<double> x(30);
  for (double& v : x) v = rng.uniform();
  ResidualNet::Workspace ws;
  std::vector<double> dout(3, 0.5);
  std::vector<double> grad(net.params().size());
  for (auto _ : state) {
    net.forward(x, ws);
    std::fill(grad.begin(), grad.end(), 0.0);
    net.backward(ws, dout, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_NetBackward)->Arg(64)->Arg(128);

void BM_EngineStep(benchmark::State& state) {
  RunConfig cfg;
  cfg.domain = state.range(0) == 0 ? "kuhn" : "leduc";
  const auto game = make_game(cfg.domain);
  Engine engine(*game, cfg);
  for (auto _ : state) {
    engine.step();
  }
}
BENCHMARK(BM_EngineStep)->Arg(0)->Arg(1);

void BM_Exploitability(benchmark::State& state) {
  const auto game = game_for(static_cast<int>(state.range(0)));
  const StrategyProfile uniform;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exploitability(*game, uniform));
  }
}
BENCHMARK(BM_Exploitability)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
