#include "mccfr/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mccfr/check.hpp"

namespace mccfr {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw Error("config key '" + key + "': cannot parse '" + value + "' as bool");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(trim(value), &pos);
    MCCFR_CHECK_MSG(pos == trim(value).size(), "trailing characters");
    return d;
  } catch (const std::exception&) {
    throw Error("config key '" + key + "': cannot parse '" + value + "' as number");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(trim(value), &pos);
    MCCFR_CHECK_MSG(pos == trim(value).size(), "trailing characters");
    return i;
  } catch (const std::exception&) {
    throw Error("config key '" + key + "': cannot parse '" + value + "' as integer");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  const std::int64_t i = parse_int(key, value);
  if (i < 0) throw Error("config key '" + key + "': must be non-negative");
  return static_cast<std::uint64_t>(i);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::int64_t RunConfig::iterations_or_default() const {
  if (iterations > 0) return iterations;
  return domain == "leduc" ? 50000 : 10000;
}

int RunConfig::width_or_default() const {
  if (net_width > 0) return net_width;
  return domain == "leduc" ? 128 : 64;
}

std::int64_t RunConfig::eval_every_or_default() const {
  if (eval_every > 0) return eval_every;
  return domain == "leduc" ? 2500 : 500;
}

void RunConfig::validate() const {
  MCCFR_CHECK_MSG(domain == "kuhn" || domain == "leduc",
                  "unknown domain '" << domain << "' (expected kuhn or leduc)");
  MCCFR_CHECK(iterations >= 0);
  MCCFR_CHECK(net_blocks >= 0);
  MCCFR_CHECK(net_width >= 0);
  MCCFR_CHECK(net_bottleneck >= 1);
  MCCFR_CHECK(width_or_default() % net_bottleneck == 0);
  MCCFR_CHECK(replay_capacity > 0);
  MCCFR_CHECK(replay_alpha >= 0.0);
  MCCFR_CHECK(replay_eps > 0.0);
  MCCFR_CHECK(eval_every >= 0);
  MCCFR_CHECK(snapshot_every > 0);
  MCCFR_CHECK(diag_window > 0);
  training.validate();
}

std::vector<std::string> preset_names() {
  return {"full",
          "no_target_networks",
          "no_exploration",
          "no_variance_objective",
          "no_prioritized_replay",
          "no_baseline_subtraction",
          "minimal"};
}

void apply_preset(RunConfig& cfg, const std::string& preset) {
  TrainingConfig& t = cfg.training;
  t.target_nets = true;
  t.exploration = true;
  t.variance_objective = true;
  t.prioritized_replay = true;
  t.baseline_subtraction = true;
  if (preset == "full") {
    // all switches on
  } else if (preset == "no_target_networks") {
    t.target_nets = false;
  } else if (preset == "no_exploration") {
    t.exploration = false;
  } else if (preset == "no_variance_objective") {
    t.variance_objective = false;
  } else if (preset == "no_prioritized_replay") {
    t.prioritized_replay = false;
  } else if (preset == "no_baseline_subtraction") {
    t.baseline_subtraction = false;
  } else if (preset == "minimal") {
    t.target_nets = false;
    t.exploration = false;
    t.variance_objective = false;
    t.prioritized_replay = false;
    t.baseline_subtraction = false;
  } else {
    throw Error("unknown preset '" + preset + "'");
  }
  cfg.preset = preset;
}

void apply_key_value(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = lower(trim(raw_key));
  const std::string value = trim(raw_value);
  TrainingConfig& t = cfg.training;

  if (key == "domain") {
    cfg.domain = lower(value);
  } else if (key == "preset") {
    apply_preset(cfg, lower(value));
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value);
  } else if (key == "iterations" || key == "iters") {
    cfg.iterations = parse_int(key, value);
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "epsilon") {
    t.epsilon = parse_double(key, value);
  } else if (key == "tau_target") {
    t.tau_target = parse_int(key, value);
  } else if (key == "tau_train") {
    t.tau_train = parse_int(key, value);
  } else if (key == "batch_size") {
    t.batch_size = parse_int(key, value);
  } else if (key == "lambda") {
    t.lambda_variance = parse_double(key, value);
  } else if (key == "huber_kappa") {
    t.huber_kappa = parse_double(key, value);
  } else if (key == "learning_rate") {
    t.learning_rate = parse_double(key, value);
  } else if (key == "grad_clip") {
    t.grad_clip = parse_double(key, value);
  } else if (key == "alpha_warm") {
    t.alpha_warm = parse_double(key, value);
  } else if (key == "warm_start_burnin") {
    t.warm_start_burnin = parse_int(key, value);
  } else if (key == "baseline_rho") {
    t.baseline_rho = parse_double(key, value);
  } else if (key == "variance_coupling") {
    const std::string v = lower(value);
    if (v == "coupled") {
      t.coupling = VarianceCoupling::kCoupled;
    } else if (v == "penalty") {
      t.coupling = VarianceCoupling::kPenalty;
    } else {
      throw Error("config key 'variance_coupling': expected coupled or penalty, got '" + value + "'");
    }
  } else if (key == "td_error_mode") {
    const std::string v = lower(value);
    if (v == "disagreement") {
      t.td_mode = TdErrorMode::kDisagreement;
    } else if (v == "magnitude") {
      t.td_mode = TdErrorMode::kMagnitude;
    } else {
      throw Error("config key 'td_error_mode': expected disagreement or magnitude, got '" + value + "'");
    }
  } else if (key == "target_nets") {
    t.target_nets = parse_bool(key, value);
  } else if (key == "exploration") {
    t.exploration = parse_bool(key, value);
  } else if (key == "variance_objective") {
    t.variance_objective = parse_bool(key, value);
  } else if (key == "prioritized_replay") {
    t.prioritized_replay = parse_bool(key, value);
  } else if (key == "baseline_subtraction") {
    t.baseline_subtraction = parse_bool(key, value);
  } else if (key == "warm_start") {
    t.warm_start = parse_bool(key, value);
  } else if (key == "net_blocks") {
    cfg.net_blocks = static_cast<int>(parse_int(key, value));
  } else if (key == "net_width") {
    cfg.net_width = static_cast<int>(parse_int(key, value));
  } else if (key == "net_bottleneck") {
    cfg.net_bottleneck = static_cast<int>(parse_int(key, value));
  } else if (key == "replay_capacity") {
    cfg.replay_capacity = parse_int(key, value);
  } else if (key == "replay_alpha") {
    cfg.replay_alpha = parse_double(key, value);
  } else if (key == "replay_eps") {
    cfg.replay_eps = parse_double(key, value);
  } else if (key == "eval_every") {
    cfg.eval_every = parse_int(key, value);
  } else if (key == "snapshot_every") {
    cfg.snapshot_every = parse_int(key, value);
  } else if (key == "diag_window") {
    cfg.diag_window = parse_int(key, value);
  } else {
    throw Error("unknown config key '" + raw_key + "'");
  }
}

void parse_config_stream(std::istream& is, RunConfig& cfg) {
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("config line " + std::to_string(line_no) + ": expected key = value, got '" + line + "'");
    }
    apply_key_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config file '" + path + "'");
  RunConfig cfg;
  parse_config_stream(is, cfg);
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  const TrainingConfig& t = cfg.training;
  std::ostringstream os;
  os << "domain = " << cfg.domain << "\n";
  os << "preset = " << cfg.preset << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "iterations = " << cfg.iterations_or_default() << "\n";
  os << "target_nets = " << (t.target_nets ? "true" : "false") << "\n";
  os << "exploration = " << (t.exploration ? "true" : "false") << "\n";
  os << "variance_objective = " << (t.variance_objective ? "true" : "false") << "\n";
  os << "prioritized_replay = " << (t.prioritized_replay ? "true" : "false") << "\n";
  os << "baseline_subtraction = " << (t.baseline_subtraction ? "true" : "false") << "\n";
  os << "warm_start = " << (t.warm_start ? "true" : "false") << "\n";
  os << "epsilon = " << fmt(t.epsilon) << "\n";
  os << "tau_target = " << t.tau_target << "\n";
  os << "tau_train = " << t.tau_train << "\n";
  os << "batch_size = " << t.batch_size << "\n";
  os << "lambda = " << fmt(t.lambda_variance) << "\n";
  os << "huber_kappa = " << fmt(t.huber_kappa) << "\n";
  os << "learning_rate = " << fmt(t.learning_rate) << "\n";
  os << "grad_clip = " << fmt(t.grad_clip) << "\n";
  os << "alpha_warm = " << fmt(t.alpha_warm) << "\n";
  os << "warm_start_burnin = " << t.warm_start_burnin << "\n";
  os << "baseline_rho = " << fmt(t.baseline_rho) << "\n";
  os << "variance_coupling = " << (t.coupling == VarianceCoupling::kCoupled ? "coupled" : "penalty") << "\n";
  os << "td_error_mode = " << (t.td_mode == TdErrorMode::kDisagreement ? "disagreement" : "magnitude") << "\n";
  os << "net_blocks = " << cfg.net_blocks << "\n";
  os << "net_width = " << cfg.width_or_default() << "\n";
  os << "net_bottleneck = " << cfg.net_bottleneck << "\n";
  os << "replay_capacity = " << cfg.replay_capacity << "\n";
  os << "replay_alpha = " << fmt(cfg.replay_alpha) << "\n";
  os << "replay_eps = " << fmt(cfg.replay_eps) << "\n";
  os << "eval_every = " << cfg.eval_every_or_default() << "\n";
  os << "snapshot_every = " << cfg.snapshot_every << "\n";
  os << "diag_window = " << cfg.diag_window << "\n";
  return os.str();
}

}  // namespace mccfr
