#pragma once

#include "wwlab/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace wwlab::cli {

using io::json;

/// Flags shared by every subcommand.
struct Common {
  std::optional<std::uint64_t> seed;
  /// Relative input paths inside a config resolve against this directory.
  std::filesystem::path base_dir = ".";
  std::string format = "json";
};

struct Outcome {
  /// Config with every default filled in; rerunning it reproduces the payload.
  json config = json::object();
  json payload = json::object();
  /// Filled by subcommands that support --format csv.
  std::string csv;
  int exit_code = 0;
};

inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

int exit_code_for(ErrorKind kind);
int exit_code_for(Verdict verdict);

/// {"header": {tool, version, command, timestamp}, "config": ..., "payload": ...}
json make_report(const std::string& command, const Outcome& outcome, const std::string& timestamp);
std::string utc_timestamp();

/// resolved[key], inserting fallback when absent; type errors become input errors.
template <class T>
T param(json& resolved, const char* key, T fallback) {
  if (!resolved.contains(key)) resolved[key] = fallback;
  try {
    return resolved[key].template get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::invalid_argument, std::string("config field \"") + key + "\" has the wrong type");
  }
}
MultiIndex param_index(json& resolved, const char* key, const MultiIndex& fallback);
const json& required(const json& config, const char* key);

/// Seed from --seed, else from the config; absent in both is an input error.
std::uint64_t require_seed(json& resolved, const Common& common);

/// Ladder from [[n], ...] or {"top", "rungs", "ratio"}; absent means the geometric default ending at top.
std::vector<MultiIndex> ladder_param(json& resolved, const char* key, const MultiIndex& top, int rungs = 5);

/// Sequence from resolved[key] (inline JSON) or resolved[key + "_path"]. Adds the "noise" generator,
/// which draws i.i.d. samples from the required seed.
WeightSequence load_sequence(json& resolved, const std::string& key, const Common& common);
MatrixSystem load_system(json& resolved, const std::string& key, const Common& common);
TorusMeasure load_measure(const json& resolved, const std::string& key);
std::vector<TorusPoint> points_param(json& resolved, const char* key, const std::vector<TorusPoint>& fallback);

Outcome weight_analyze(const json& config, const Common& common);
Outcome weight_classify(const json& config, const Common& common);
Outcome spectral_estimate(const json& config, const Common& common);
Outcome spectral_affinity(const json& config, const Common& common);
Outcome system_simulate(const json& config, const Common& common);
Outcome system_ww_uniform(const json& config, const Common& common);
Outcome vdc_check(const json& config, const Common& common);
Outcome vdc_fuzz(const json& config, const Common& common);

/// Dispatch on "weight analyze", "vdc fuzz", ...
Outcome run_command(const std::string& command, const json& config, const Common& common);

}  // namespace wwlab::cli
