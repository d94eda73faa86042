#include "mccfr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mccfr/check.hpp"
#include "mccfr/checkpoint.hpp"
#include "mccfr/exact_eval.hpp"
#include "mccfr/kuhn.hpp"
#include "mccfr/leduc.hpp"
#include "mccfr/os_mccfr.hpp"
#include "mccfr/trajectory.hpp"

namespace mccfr {
namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

NetTopology policy_topology(const Game& game, const RunConfig& cfg) {
  NetTopology t;
  t.input = game.feature_size();
  t.width = cfg.width_or_default();
  t.blocks = cfg.net_blocks;
  t.bottleneck = cfg.net_bottleneck;
  t.output = game.num_actions();
  t.head = HeadKind::kPolicy;
  return t;
}

NetTopology scalar_topology(const Game& game, const RunConfig& cfg) {
  NetTopology t = policy_topology(game, cfg);
  t.output = 1;
  t.head = HeadKind::kScalar;
  return t;
}

const RunConfig& checked(const RunConfig& cfg) {
  cfg.validate();
  return cfg;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  MCCFR_CHECK_MSG(os.good(), "cannot open '" << path.string() << "' for writing");
  return os;
}

void write_metrics_header(std::ostream& os) {
  os << "iteration,exploitability_avg,exploitability_current,"
        "weight_mean,weight_variance,weight_max,ess,"
        "entropy_mean,disagreement_mean,target_drift,"
        "loss_strategy,loss_sampler,loss_variance\n";
}

void write_metrics_row(std::ostream& os, const DiagnosticSnapshot& s, const TrainReport& r) {
  os << s.iteration << ',' << fmt17(s.exploitability_avg) << ','
     << fmt17(s.exploitability_current) << ',' << fmt17(s.weights.mean) << ','
     << fmt17(s.weights.variance) << ',' << fmt17(s.weights.max) << ',' << fmt17(s.ess)
     << ',' << fmt17(s.entropy_mean) << ',' << fmt17(s.disagreement_mean) << ','
     << fmt17(s.target_drift) << ',' << fmt17(r.loss_strategy) << ','
     << fmt17(r.loss_sampler) << ',' << fmt17(r.loss_variance) << '\n';
}

}  // namespace

std::unique_ptr<Game> make_game(const std::string& domain) {
  if (domain == "kuhn") return std::make_unique<KuhnGame>();
  if (domain == "leduc") return std::make_unique<LeducGame>();
  throw Error("unknown domain '" + domain + "' (expected kuhn or leduc)");
}

Engine::Engine(const Game& game, const RunConfig& cfg)
    : game_(game),
      cfg_(checked(cfg)),
      infosets_(enumerate_infosets_with_actions(game)),
      f_(policy_topology(game, cfg_)),
      g_(policy_topology(game, cfg_)),
      v_(scalar_topology(game, cfg_)),
      f_target_(policy_topology(game, cfg_)),
      g_target_(policy_topology(game, cfg_)),
      opt_f_(f_.params().size(), cfg_.training.learning_rate),
      opt_g_(g_.params().size(), cfg_.training.learning_rate),
      opt_v_(v_.params().size(), cfg_.training.learning_rate),
      buffer_(static_cast<std::size_t>(cfg_.replay_capacity),
              cfg_.training.prioritized_replay ? cfg_.replay_alpha : 0.0, cfg_.replay_eps),
      deal_rng_(stream_seed(cfg_.seed, "dealing")),
      act_rng_(stream_seed(cfg_.seed, "acting")),
      replay_rng_(stream_seed(cfg_.seed, "replay")),
      tracker_(static_cast<std::size_t>(cfg_.diag_window)) {
  Rng init_rng(stream_seed(cfg_.seed, "init"));
  f_ = ResidualNet::random_init(f_.topology(), init_rng);
  g_ = ResidualNet::random_init(g_.topology(), init_rng);
  v_ = ResidualNet::random_init(v_.topology(), init_rng);
  copy_into_target(f_, f_target_);
  copy_into_target(g_, g_target_);
  evaluate_exploitability();
}

std::vector<double> Engine::sampler_dist(const InfoSetKey& key,
                                         std::span<const Action> legal) const {
  const ResidualNet& net = cfg_.training.target_nets ? g_target_ : g_;
  return net.policy_legal(game_.encode_features(key), legal);
}

std::vector<double> Engine::target_dist(const InfoSetKey& key,
                                        std::span<const Action> legal) const {
  std::vector<double> rm = current_strategy(table_, key, static_cast<int>(legal.size()));
  const TrainingConfig& tc = cfg_.training;
  if (!tc.warm_start || t_ <= tc.warm_start_burnin) return rm;
  const ResidualNet& net = tc.target_nets ? f_target_ : f_;
  return warm_start_strategy(net.policy_legal(game_.encode_features(key), legal), rm,
                             tc.alpha_warm);
}

void Engine::step() {
  ++t_;
  const TrainingConfig& tc = cfg_.training;
  const double eps = tc.exploration ? tc.epsilon : 0.0;

  const PolicyLookup sampler = [this](const InfoSetKey& key, std::span<const Action> legal) {
    return sampler_dist(key, legal);
  };
  const PolicyLookup target = [this](const InfoSetKey& key, std::span<const Action> legal) {
    return target_dist(key, legal);
  };

  const Trajectory traj = sample_trajectory(game_, sampler, target, eps, deal_rng_, act_rng_);

  // Replay entries are captured before the step's table row is touched, so the
  // stored training target is the regret-matching strategy that produced the
  // trajectory, not the post-update one.
  const StepObserver observer = [this, &tc](const StepUpdate& u) {
    Experience e;
    e.features = game_.encode_features(u.step->key);
    e.target_strategy = current_strategy(table_, u.step->key, u.step->arity);
    e.legal.assign(u.legal.begin(), u.legal.end());
    e.importance_weight = u.trajectory_weight;
    if (tc.td_mode == TdErrorMode::kDisagreement) {
      const std::vector<double> model = f_.policy_legal(e.features, u.legal);
      const std::size_t idx = static_cast<std::size_t>(u.step->action_index);
      e.td_error =
          std::abs(u.sampled_action_value) * std::abs(model[idx] - u.target_dist[idx]);
    } else {
      e.td_error = std::abs(u.sampled_weighted_regret);
    }
    e.iteration = t_;
    buffer_.push(std::move(e));
  };

  BaselineTable* baseline = tc.baseline_subtraction ? &baseline_ : nullptr;
  const double w =
      apply_outcome_updates(game_, table_, traj, target, baseline, tc.baseline_rho, &observer);
  tracker_.record_weight(w);

  if (tc.tau_train > 0 && t_ % tc.tau_train == 0 &&
      buffer_.size() >= static_cast<std::size_t>(tc.batch_size)) {
    const double beta = annealed_beta(t_, cfg_.iterations_or_default());
    const ReplayBuffer::Batch batch =
        buffer_.sample(static_cast<std::size_t>(tc.batch_size), beta, replay_rng_);
    last_report_ = train_step(buffer_, batch, f_, opt_f_, g_, opt_g_, v_, opt_v_, tc);
  }

  if (tc.target_nets) {
    maybe_update_targets(t_, tc.tau_target, f_, f_target_, g_, g_target_);
  }
}

StrategyProfile Engine::average_profile() const {
  return extract_average_profile(game_, table_);
}

StrategyProfile Engine::current_profile() const {
  return extract_current_profile(game_, table_);
}

std::vector<std::vector<double>> Engine::policy_predictions(const ResidualNet& net) const {
  std::vector<std::vector<double>> out;
  out.reserve(infosets_.size());
  for (const auto& [key, legal] : infosets_) {
    out.push_back(net.policy_legal(game_.encode_features(key), legal));
  }
  return out;
}

void Engine::evaluate_exploitability() {
  exploit_avg_ = exploitability(game_, average_profile());
  exploit_current_ = exploitability(game_, current_profile());
}

DiagnosticSnapshot Engine::snapshot() {
  DiagnosticSnapshot s;
  s.iteration = t_;
  if (tracker_.window_size() > 0) {
    s.weights = tracker_.window_stats();
    s.ess = s.weights.max > 0.0 ? tracker_.window_ess() : 0.0;
  }
  const double eps = cfg_.training.exploration ? cfg_.training.epsilon : 0.0;
  double entropy = 0.0;
  double disagreement = 0.0;
  std::vector<std::vector<double>> predictions;
  predictions.reserve(infosets_.size());
  for (const auto& [key, legal] : infosets_) {
    std::vector<double> raw = sampler_dist(key, legal);
    entropy += support_entropy(mix_exploration(raw, eps));
    const std::vector<double> rm = current_strategy(table_, key, static_cast<int>(legal.size()));
    const std::vector<double> model = f_.policy_legal(game_.encode_features(key), legal);
    disagreement += kl_divergence(rm, model);
    predictions.push_back(std::move(raw));
  }
  const double n = static_cast<double>(infosets_.size());
  s.entropy_mean = entropy / n;
  s.disagreement_mean = disagreement / n;
  s.target_drift = tracker_.drift_and_store(std::move(predictions));
  s.exploitability_avg = exploit_avg_;
  s.exploitability_current = exploit_current_;
  return s;
}

RunResult run(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  const std::unique_ptr<Game> game = make_game(cfg.domain);
  const auto start = std::chrono::steady_clock::now();
  Engine engine(*game, cfg);

  const std::int64_t total = cfg.iterations_or_default();
  const std::int64_t eval_every = cfg.eval_every_or_default();
  const bool writing = !cfg.out_dir.empty();
  const fs::path dir(cfg.out_dir);

  std::ofstream metrics;
  if (writing) {
    fs::create_directories(dir);
    metrics = open_out(dir / "metrics.csv");
    write_metrics_header(metrics);
    write_metrics_row(metrics, engine.snapshot(), engine.last_train_report());
  }

  for (std::int64_t t = 1; t <= total; ++t) {
    engine.step();
    const bool last = (t == total);
    if (t % eval_every == 0 || last) {
      engine.evaluate_exploitability();
      if (log) {
        *log << cfg.domain << ' ' << cfg.preset << " seed " << cfg.seed << " iter " << t
             << " exploitability(avg) " << fmt_short(engine.last_exploitability_avg())
             << " (current) " << fmt_short(engine.last_exploitability_current()) << '\n';
      }
    }
    if (writing && (t % cfg.snapshot_every == 0 || last)) {
      write_metrics_row(metrics, engine.snapshot(), engine.last_train_report());
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunResult res;
  res.domain = cfg.domain;
  res.preset = cfg.preset;
  res.seed = cfg.seed;
  res.iterations = total;
  res.final_exploitability_avg = engine.last_exploitability_avg();
  res.final_exploitability_current = engine.last_exploitability_current();
  res.wall_clock_seconds = seconds;

  if (writing) {
    // Wall-clock time lives only here: metrics.csv stays byte-identical for a
    // fixed seed and configuration.
    std::ofstream sum = open_out(dir / "summary.csv");
    sum << "domain,preset,seed,iterations,final_exploitability_avg,"
           "final_exploitability_current,wall_clock_seconds\n";
    sum << res.domain << ',' << res.preset << ',' << res.seed << ',' << res.iterations << ','
        << fmt17(res.final_exploitability_avg) << ','
        << fmt17(res.final_exploitability_current) << ',' << fmt17(res.wall_clock_seconds)
        << '\n';

    std::ofstream cfg_os = open_out(dir / "config.txt");
    cfg_os << render_config(cfg);

    std::ofstream prof = open_out(dir / "avg_strategy.txt");
    save_profile_text(prof, *game, engine.average_profile());

    save_net((dir / "f.net").string(), engine.strategy_net());
    save_net((dir / "g.net").string(), engine.sampling_net());
    save_net((dir / "v.net").string(), engine.variance_net());
  }
  return res;
}

AblationSummary run_ablation_suite(const std::string& domain,
                                   std::span<const std::uint64_t> seeds,
                                   std::int64_t iterations, const std::string& out_dir,
                                   const RunConfig& base, std::ostream* log) {
  MCCFR_CHECK_MSG(!seeds.empty(), "ablation needs at least one seed");
  AblationSummary summary;
  for (const std::string& preset : preset_names()) {
    AblationEntry entry;
    entry.preset = preset;
    double total_seconds = 0.0;
    for (const std::uint64_t seed : seeds) {
      RunConfig cfg = base;
      cfg.domain = domain;
      apply_preset(cfg, preset);
      cfg.seed = seed;
      if (iterations > 0) cfg.iterations = iterations;
      cfg.out_dir =
          out_dir.empty()
              ? std::string{}
              : (fs::path(out_dir) / preset / ("seed_" + std::to_string(seed))).string();
      try {
        const RunResult r = run(cfg, log);
        entry.seeds.push_back(seed);
        entry.final_exploitability.push_back(r.final_exploitability_avg);
        total_seconds += r.wall_clock_seconds;
      } catch (const std::exception& ex) {
        entry.failed = true;
        entry.error = ex.what();
        if (log) *log << preset << " seed " << seed << " failed: " << ex.what() << '\n';
        break;
      }
    }
    if (!entry.final_exploitability.empty()) {
      const auto& xs = entry.final_exploitability;
      entry.mean_exploitability =
          std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
      entry.min_exploitability = *std::min_element(xs.begin(), xs.end());
      entry.max_exploitability = *std::max_element(xs.begin(), xs.end());
      entry.mean_seconds = total_seconds / static_cast<double>(xs.size());
    }
    summary.entries.push_back(std::move(entry));
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream csv = open_out(fs::path(out_dir) / "ablation.csv");
    csv << "preset,runs,mean_exploitability,min_exploitability,max_exploitability,"
           "mean_seconds,failed,error\n";
    for (const AblationEntry& e : summary.entries) {
      csv << e.preset << ',' << e.final_exploitability.size() << ','
          << fmt17(e.mean_exploitability) << ',' << fmt17(e.min_exploitability) << ','
          << fmt17(e.max_exploitability) << ',' << fmt17(e.mean_seconds) << ','
          << (e.failed ? 1 : 0) << ',' << e.error << '\n';
    }
    std::ofstream txt = open_out(fs::path(out_dir) / "ablation.txt");
    txt << format_ablation_table(summary);
  }
  return summary;
}

std::string format_ablation_table(const AblationSummary& summary) {
  std::ostringstream os;
  os << std::left << std::setw(26) << "preset" << std::right << std::setw(6) << "runs"
     << std::setw(12) << "mean" << std::setw(12) << "min" << std::setw(12) << "max"
     << "  status\n";
  for (const AblationEntry& e : summary.entries) {
    os << std::left << std::setw(26) << e.preset << std::right << std::setw(6)
       << e.final_exploitability.size();
    if (e.final_exploitability.empty()) {
      os << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12) << "-";
    } else {
      os << std::setw(12) << fmt_short(e.mean_exploitability) << std::setw(12)
         << fmt_short(e.min_exploitability) << std::setw(12)
         << fmt_short(e.max_exploitability);
    }
    os << "  " << (e.failed ? ("FAILED: " + e.error) : std::string("ok")) << '\n';
  }
  return os.str();
}

SweepResult run_sensitivity_sweep(const std::string& domain, const std::string& parameter,
                                  std::vector<double> values, std::uint64_t seed,
                                  std::int64_t iterations, const std::string& out_dir,
                                  const RunConfig& base, std::ostream* log) {
  const bool known =
      parameter == "epsilon" || parameter == "tau_target" || parameter == "lambda";
  MCCFR_CHECK_MSG(known, "unknown sweep parameter '"
                             << parameter << "' (expected epsilon, tau_target or lambda)");
  if (values.empty()) {
    if (parameter == "epsilon") values = {0.05, 0.1, 0.15, 0.2};
    if (parameter == "tau_target") values = {50, 100, 200, 500};
    if (parameter == "lambda") values = {0.05, 0.1, 0.2, 0.5};
  }

  SweepResult out;
  out.parameter = parameter;
  for (const double value : values) {
    RunConfig cfg = base;
    cfg.domain = domain;
    apply_preset(cfg, "full");
    cfg.seed = seed;
    if (iterations > 0) cfg.iterations = iterations;
    if (parameter == "epsilon") {
      cfg.training.epsilon = value;
    } else if (parameter == "tau_target") {
      const int tau = static_cast<int>(std::llround(value));
      MCCFR_CHECK_MSG(tau > 0, "tau_target sweep values must be positive integers");
      cfg.training.tau_target = tau;
    } else {
      cfg.training.lambda_variance = value;
    }
    cfg.out_dir = out_dir.empty()
                      ? std::string{}
                      : (fs::path(out_dir) / (parameter + "_" + fmt_short(value))).string();
    SweepPoint point;
    point.value = value;
    point.result = run(cfg, log);
    out.points.push_back(std::move(point));
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream csv = open_out(fs::path(out_dir) / "sweep.csv");
    csv << "parameter,value,final_exploitability_avg,final_exploitability_current,"
           "wall_clock_seconds\n";
    for (const SweepPoint& p : out.points) {
      csv << parameter << ',' << fmt17(p.value) << ','
          << fmt17(p.result.final_exploitability_avg) << ','
          << fmt17(p.result.final_exploitability_current) << ','
          << fmt17(p.result.wall_clock_seconds) << '\n';
    }
  }
  return out;
}

CheckpointEval evaluate_checkpoint(const std::string& domain, const std::string& run_dir) {
  const std::unique_ptr<Game> game = make_game(domain);
  const fs::path dir(run_dir);

  std::ifstream prof_is(dir / "avg_strategy.txt");
  MCCFR_CHECK_MSG(prof_is.good(),
                  "cannot open '" << (dir / "avg_strategy.txt").string() << "'");
  const StrategyProfile avg = load_profile_text(prof_is);

  CheckpointEval ev;
  ev.exploitability_avg_strategy = exploitability(*game, avg);

  const ResidualNet f = load_net((dir / "f.net").string());
  MCCFR_CHECK_MSG(f.topology().input == game->feature_size() &&
                      f.topology().output == game->num_actions(),
                  "checkpoint in '" << run_dir << "' does not fit domain '" << domain << "'");
  StrategyProfile net_profile;
  for (const auto& [key, legal] : enumerate_infosets_with_actions(*game)) {
    net_profile.set(key, f.policy_legal(game->encode_features(key), legal));
  }
  ev.exploitability_strategy_net = exploitability(*game, net_profile);
  return ev;
}

}  // namespace mccfr
