#include "report.hpp"

#include <chrono>
#include <ctime>

namespace wwlab::cli {

int exit_code_for(ErrorKind kind) { return kind == ErrorKind::invariant_violation ? kExitInvariant : kExitInput; }

int exit_code_for(Verdict verdict) {
  switch (verdict) {
    case Verdict::consistent: return 0;
    case Verdict::fails_1: return 10;
    case Verdict::fails_2: return 11;
    case Verdict::fails_3: return 12;
    case Verdict::inconclusive_2: return 13;
    case Verdict::inconclusive: return 14;
  }
  return 14;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json make_report(const std::string& command, const Outcome& outcome, const std::string& timestamp) {
  return json{{"header", {{"tool", "wwlab"}, {"version", WWLAB_VERSION}, {"command", command}, {"timestamp", timestamp}}},
              {"config", outcome.config},
              {"payload", outcome.payload}};
}

MultiIndex param_index(json& resolved, const char* key, const MultiIndex& fallback) {
  if (!resolved.contains(key)) resolved[key] = io::to_json(fallback);
  return io::multi_index_from_json(resolved[key]);
}

const json& required(const json& config, const char* key) {
  if (!config.contains(key)) throw Error(ErrorKind::invalid_argument, std::string("config is missing \"") + key + "\"");
  return config.at(key);
}

std::uint64_t require_seed(json& resolved, const Common& common) {
  if (common.seed) resolved["seed"] = *common.seed;
  if (!resolved.contains("seed"))
    throw Error(ErrorKind::invalid_argument, "this experiment is randomized: pass --seed or set \"seed\" in the config");
  if (!resolved["seed"].is_number_unsigned() && !resolved["seed"].is_number_integer())
    throw Error(ErrorKind::invalid_argument, "seed must be a non-negative integer");
  return resolved["seed"].get<std::uint64_t>();
}

std::vector<MultiIndex> ladder_param(json& resolved, const char* key, const MultiIndex& top, int rungs) {
  std::vector<MultiIndex> ladder;
  if (!resolved.contains(key)) {
    ladder = geometric_ladder(top, rungs, 2.0);
  } else if (resolved[key].is_object()) {
    const json& spec = resolved[key];
    const MultiIndex t = spec.contains("top") ? io::multi_index_from_json(spec["top"]) : top;
    const int r = spec.contains("rungs") ? spec["rungs"].get<int>() : rungs;
    const double ratio = spec.contains("ratio") ? spec["ratio"].get<double>() : 2.0;
    ladder = geometric_ladder(t, r, ratio);
  } else {
    for (const auto& n : resolved[key]) ladder.push_back(io::multi_index_from_json(n));
  }
  validate_ladder(ladder, static_cast<int>(top.size()));
  json out = json::array();
  for (const auto& n : ladder) out.push_back(io::to_json(n));
  resolved[key] = out;
  return ladder;
}

namespace {

std::filesystem::path resolve_path(const Common& common, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : common.base_dir / path;
}

const json* inline_or_file(json& resolved, const std::string& key, const Common& common, json& storage) {
  if (resolved.contains(key)) return &resolved[key];
  const std::string path_key = key + "_path";
  if (resolved.contains(path_key)) {
    storage = io::read_json_file(resolve_path(common, resolved[path_key].get<std::string>()));
    return &storage;
  }
  return nullptr;
}

}  // namespace

WeightSequence load_sequence(json& resolved, const std::string& key, const Common& common) {
  json storage;
  const json* found = inline_or_file(resolved, key, common, storage);
  if (!found) throw Error(ErrorKind::invalid_argument, "config needs \"" + key + "\" or \"" + key + "_path\"");
  // copied because writing the seed back may reallocate `resolved`
  const json spec = *found;
  if (spec.contains("generator") && spec["generator"].value("kind", "") == "noise") {
    const MultiIndex box = io::multi_index_from_json(required(spec, "box"));
    if (!all_nonnegative(box)) throw Error(ErrorKind::invalid_argument, "box extents must be >= 0");
    const std::string dist = spec["generator"].value("distribution", "sign");
    Rng rng(require_seed(resolved, common));
    Eigen::VectorXcd v(static_cast<Eigen::Index>(box_volume(box)));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (dist == "sign") v[i] = rng.sign();
      else if (dist == "phase") v[i] = unit_root(rng.uniform());
      else throw Error(ErrorKind::invalid_argument, "noise distribution must be \"sign\" or \"phase\"");
    }
    return WeightSequence::from_values(box, std::move(v));
  }
  return io::weight_sequence_from_json(spec);
}

MatrixSystem load_system(json& resolved, const std::string& key, const Common& common) {
  json storage;
  const json* found = inline_or_file(resolved, key, common, storage);
  if (!found) throw Error(ErrorKind::invalid_argument, "config needs \"" + key + "\" or \"" + key + "_path\"");
  // copied because writing the seed back may reallocate `resolved`
  const json spec = *found;
  if (spec.contains("random")) {
    const json& r = spec["random"];
    Rng rng(require_seed(resolved, common));
    return random_commuting_system(required(r, "N").get<Eigen::Index>(), required(r, "d").get<int>(), rng);
  }
  return io::system_from_json(spec);
}

TorusMeasure load_measure(const json& resolved, const std::string& key) {
  return io::measure_from_json(required(resolved, key.c_str()));
}

std::vector<TorusPoint> points_param(json& resolved, const char* key, const std::vector<TorusPoint>& fallback) {
  if (!resolved.contains(key)) {
    json out = json::array();
    for (const auto& z : fallback) out.push_back(io::to_json(z));
    resolved[key] = out;
    return fallback;
  }
  std::vector<TorusPoint> pts;
  for (const auto& z : resolved[key]) pts.push_back(io::torus_point_from_json(z));
  return pts;
}

Outcome run_command(const std::string& command, const json& config, const Common& common) {
  if (command == "weight analyze") return weight_analyze(config, common);
  if (command == "weight classify") return weight_classify(config, common);
  if (command == "spectral estimate") return spectral_estimate(config, common);
  if (command == "spectral affinity") return spectral_affinity(config, common);
  if (command == "system simulate") return system_simulate(config, common);
  if (command == "system ww-uniform") return system_ww_uniform(config, common);
  if (command == "vdc check") return vdc_check(config, common);
  if (command == "vdc fuzz") return vdc_fuzz(config, common);
  throw Error(ErrorKind::invalid_argument, "unknown command \"" + command + "\"");
}

}  // namespace wwlab::cli
