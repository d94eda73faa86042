#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mccfr/training.hpp"

namespace mccfr {

// Full description of one run. Domain-dependent defaults (iterations, network
// width, evaluation cadence) are left at 0 and resolved through the _or_default
// accessors.
struct RunConfig {
  std::string domain = "kuhn";  // "kuhn" or "leduc"
  std::string preset = "full";
  std::uint64_t seed = 1;
  std::int64_t iterations = 0;  // 0 -> 10000 (kuhn) / 50000 (leduc)
  std::string out_dir;          // empty -> no files written

  TrainingConfig training;

  int net_blocks = 4;
  int net_width = 0;  // 0 -> 64 (kuhn) / 128 (leduc)
  int net_bottleneck = 4;

  std::int64_t replay_capacity = 10000;
  double replay_alpha = 0.6;
  double replay_eps = 1e-3;

  std::int64_t eval_every = 0;  // 0 -> 500 (kuhn) / 2500 (leduc)
  std::int64_t snapshot_every = 100;
  std::int64_t diag_window = 1000;

  std::int64_t iterations_or_default() const;
  int width_or_default() const;
  std::int64_t eval_every_or_default() const;
  void validate() const;
};

// The seven component-ablation presets: "full" (everything on), one
// "no_<component>" per switch, and "minimal" (every switch off). Warm start is
// part of the base algorithm and stays on in all presets; override it with an
// explicit warm_start key if needed.
std::vector<std::string> preset_names();
void apply_preset(RunConfig& cfg, const std::string& preset);

// Applies one "key = value" assignment; throws on unknown keys or malformed
// values. "preset" applies its switches immediately, so later keys can
// override individual switches.
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Plain-text config: one "key = value" per line, '#' starts a comment.
void parse_config_stream(std::istream& is, RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

// Every key with its resolved value, one per line (round-trips through
// parse_config_stream).
std::string render_config(const RunConfig& cfg);

}  // namespace mccfr
