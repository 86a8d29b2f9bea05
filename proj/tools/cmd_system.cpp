#include "report.hpp"

#include <sstream>

namespace wwlab::cli {

namespace {

Operator load_operator(json& r, const char* key, const MatrixSystem& sys, const Common& common,
                       const std::optional<Operator>& fallback = std::nullopt) {
  if (!r.contains(key)) {
    if (!fallback) throw Error(ErrorKind::invalid_argument, std::string("config is missing \"") + key + "\"");
    r[key] = io::to_json(*fallback);
    return *fallback;
  }
  Operator x;
  if (r[key].is_object() && r[key].value("random", false)) {
    Rng rng(require_seed(r, common) ^ 0x9e3779b97f4a7c15ULL);
    x = rng.gaussian_matrix(sys.size(), sys.size());
  } else {
    x = io::operator_from_json(r[key]);
  }
  if (x.rows() != sys.size()) throw Error(ErrorKind::dimension_mismatch, std::string(key) + " size differs from the system");
  return x;
}

/// Scale-relative gap between the two spectral-coefficient paths.
double path_deviation(const Operator& a, const Operator& b, double scale) {
  const double denom = std::max({operator_norm(a), operator_norm(b), scale});
  return denom > 0.0 ? operator_norm(a - b) / denom : 0.0;
}

bool strictly_decreasing(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

}  // namespace

Outcome system_simulate(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  const MatrixSystem sys = load_system(r, "system", common);
  const int d = sys.dim();
  const Operator x = load_operator(r, "x", sys, common);
  const auto ladder = ladder_param(r, "ladder", constant_index(d, 64));
  std::optional<WeightSequence> weight;
  if (r.contains("weight") || r.contains("weight_path")) {
    weight = load_sequence(r, "weight", common);
    if (weight->dim() != d) throw Error(ErrorKind::dimension_mismatch, "weight dimension differs from the system");
  }

  const KroneckerDecomposition dec = kronecker_decomposition(sys);
  const Operator fixed = fixed_point_projection(dec, x);
  json rungs = json::array();
  std::vector<Operator> tail;
  for (const auto& n : ladder) {
    const Operator avg = ergodic_average(sys, x, n);
    tail.push_back(avg - fixed);
    json rung{{"n", io::to_json(n)},
              {"ergodic_average_norm", operator_norm(avg)},
              {"distance_to_fixed_projection", operator_norm(avg - fixed)}};
    if (weight) {
      const Operator w = weighted_average(sys, x, *weight, n);
      rung["weighted_average"] = io::to_json(w);
      rung["weighted_average_norm"] = operator_norm(w);
      rung["weighted_distance_to_x"] = operator_norm(w - x);
    }
    rungs.push_back(std::move(rung));
  }

  const MultiIndex sn = param_index(r, "spectral_n", constant_index(d, 4));
  const std::int64_t m_range = param(r, "m_range", std::int64_t{2});
  const double identity_tol = param(r, "identity_tolerance", 1e-10);
  const double scale = std::pow(operator_norm(x), 2);
  double worst = 0.0;
  std::int64_t checked = 0;
  for_each_in_box(constant_index(d, -m_range), constant_index(d, m_range), [&](const MultiIndex& m) {
    const Operator closed = operator_spectral_coeff(sys, x, m, sn);
    const Operator quad = operator_spectral_coeff_quadrature(sys, x, m, sn);
    worst = std::max(worst, path_deviation(closed, quad, scale));
    ++checked;
  });

  json payload{{"averages", rungs},
               {"fixed_point_projection", io::to_json(fixed)},
               {"spectral_identity", {{"n", io::to_json(sn)}, {"m_range", m_range}, {"checked", checked},
                                      {"max_deviation", worst}, {"tolerance", identity_tol},
                                      {"holds", worst <= identity_tol}}},
               {"kronecker", io::to_json(dec)}};
  if (r.contains("au")) {
    json& au = r["au"];
    const double eps = param(au, "epsilon", 0.1);
    const std::string mode = param(au, "mode", std::string("bilateral"));
    if (mode != "bilateral" && mode != "one_sided") throw Error(ErrorKind::invalid_argument, "au.mode must be bilateral or one_sided");
    AuStrategy strategy;
    strategy.mode = mode == "bilateral" ? AuMode::bilateral : AuMode::one_sided;
    payload["au"] = io::to_json(au_convergence_diagnostic(tail, eps, strategy));
  }
  out.payload = payload;
  if (worst > identity_tol) out.exit_code = kExitInvariant;
  return out;
}

Outcome system_ww_uniform(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  std::ostringstream csv;
  csv.precision(17);
  csv << "channel,rung,n,sup\n";
  json payload = json::object();

  if (r.contains("classical")) {
    json& c = r["classical"];
    const int d = param(c, "d", 2);
    const auto ladder = ladder_param(c, "ladder", constant_index(d, 511), 4);
    const MultiIndex grid = param_index(c, "grid", constant_index(d, 64));
    const double tol = param(c, "tolerance", 0.05);
    SampleStream stream;
    if (c.contains("stream_path")) {
      std::filesystem::path p(c["stream_path"].get<std::string>());
      stream = io::read_stream(p.is_absolute() ? p : common.base_dir / p);
    } else {
      const std::string kind = param(c, "generator", std::string("iid_sign"));
      const MultiIndex box = ladder.back();
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(box_volume(box)));
      if (kind == "iid_sign") {
        Rng rng(require_seed(c, common));
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.sign();
      } else if (kind != "zero") {
        throw Error(ErrorKind::invalid_argument, "classical.generator must be iid_sign or zero");
      }
      stream = make_stream(box, std::move(v));
    }
    Eigen::VectorXd sups(static_cast<Eigen::Index>(ladder.size()));
    json rungs = json::array();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const ClassicalSup s = classical_uniform_sup(sub_stream(stream, ladder[i]), grid);
      sups[static_cast<Eigen::Index>(i)] = s.value;
      rungs.push_back({{"n", io::to_json(ladder[i])}, {"sup", s.value}, {"argmax", io::to_json(s.argmax)}});
      csv << "classical," << i << "," << to_string(ladder[i]) << "," << s.value << "\n";
    }
    payload["classical"] = {{"rungs", rungs},
                            {"strictly_decreasing", strictly_decreasing(sups)},
                            {"final", sups[sups.size() - 1]},
                            {"tolerance", tol},
                            {"final_below_tolerance", sups[sups.size() - 1] < tol}};
  }

  if (r.contains("matrix")) {
    json& mcfg = r["matrix"];
    const MatrixSystem sys = load_system(mcfg, "system", common);
    const int d = sys.dim();
    const Operator x = load_operator(mcfg, "x", sys, common, Operator::Identity(sys.size(), sys.size()));
    const Projection e(load_operator(mcfg, "e", sys, common, Operator::Identity(sys.size(), sys.size())));
    const auto ladder = ladder_param(mcfg, "ladder", constant_index(d, 64), 4);
    const MultiIndex grid = param_index(mcfg, "grid", constant_index(d, 16));
    const KroneckerDecomposition dec = kronecker_decomposition(sys);
    const double kron_norm = (dec.kronecker_projector * tau_coordinates(x)).norm();
    json rungs = json::array();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const UniformSup s = uniform_ww_sup(sys, x, e, ladder[i], grid);
      rungs.push_back({{"n", io::to_json(ladder[i])}, {"sup", s.value}, {"argmax", io::to_json(s.argmax)}});
      csv << "matrix," << i << "," << to_string(ladder[i]) << "," << s.value << "\n";
    }
    payload["matrix"] = {{"rungs", rungs},
                         {"kronecker_component_l2", kron_norm},
                         {"complement_component_l2", (dec.complement_projector * tau_coordinates(x)).norm()},
                         {"expectation", kron_norm > 0.0 ? "expected-non-decay" : "decay"},
                         {"reason", "in finite dimension the Kronecker complement is {0}; twists at eigenvalues of the "
                                    "system keep the averages of any nonzero x away from 0"}};
  }
  if (payload.empty()) throw Error(ErrorKind::invalid_argument, "ww-uniform needs a \"classical\" or \"matrix\" block");
  out.payload = payload;
  out.csv = csv.str();
  return out;
}

}  // namespace wwlab::cli
