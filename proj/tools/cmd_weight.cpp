#include "report.hpp"

#include <algorithm>

namespace wwlab::cli {

namespace {

MultiIndex default_halfwidth(const WeightSequence& a) {
  const std::int64_t base = a.dim() == 1 ? 128 : a.dim() == 2 ? 16 : 4;
  MultiIndex h(a.dim());
  for (int j = 0; j < a.dim(); ++j) h[j] = std::min(base, a.extent()[j] / 2);
  return h;
}

std::vector<TorusPoint> generator_points(const WeightSequence& a) {
  std::vector<TorusPoint> pts;
  if (const auto* p = std::get_if<TrigPolynomial>(&a.generator()))
    for (const auto& t : p->terms()) pts.push_back(t.frequency);
  if (pts.empty()) pts.push_back(TorusPoint::identity(a.dim()));
  return pts;
}

}  // namespace

Outcome weight_analyze(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  const WeightSequence a = load_sequence(r, "input", common);
  const MultiIndex h = param_index(r, "halfwidth", default_halfwidth(a));
  require_same_dim(h, a.extent(), "halfwidth");
  if (!all_nonnegative(h)) throw Error(ErrorKind::invalid_argument, "halfwidth must be >= 0");
  const MultiIndex top = (a.upper() - h).cwiseMax(0);
  const auto ladder = ladder_param(r, "ladder", top);
  const double tol = param(r, "tolerance", 0.05);
  const bool diagnostics = param(r, "diagnostics", false);
  const auto points = points_param(r, "points", generator_points(a));

  const CorrelationTable table = correlation_table(a, h, ladder, tol);
  json atoms = json::array();
  for (const auto& z : points) {
    if (z.dim() != a.dim()) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from the sequence");
    const PointMass pm = point_mass(table.entries, z, h);
    const Eigen::VectorXcd amp = amplitude_ladder(a, z, ladder);
    atoms.push_back({{"angles", io::to_json(z)},
                     {"fejer_mass", fejer_point_mass(table.entries, z, h)},
                     {"point_mass", pm.mass},
                     {"amplitude_ladder", io::to_json(amp)},
                     {"amplitude_sq_top", std::norm(amp[amp.size() - 1])}});
  }
  out.payload = json{{"spectrum",
                      {{"total_mass", table.at(MultiIndex::Zero(a.dim())).real()},
                       {"wiener_value", wiener_continuity(table.entries, h)},
                       {"wiener_normalization", "1/prod(2h+1)"},
                       {"max_hermitian_defect", table.max_hermitian_defect()}}},
                     {"atoms", atoms},
                     {"correlations", io::to_json(table, diagnostics)}};
  out.csv = io::correlation_table_csv(table);
  return out;
}

Outcome weight_classify(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  const WeightSequence a = load_sequence(r, "input", common);
  ClassificationConfig c;
  if (r.contains("ladder")) c.ladder = ladder_param(r, "ladder", a.extent());
  c.ladder_rungs = param(r, "ladder_rungs", c.ladder_rungs);
  c.ladder_ratio = param(r, "ladder_ratio", c.ladder_ratio);
  if (r.contains("spectral_halfwidth")) c.spectral_halfwidth = io::multi_index_from_json(r["spectral_halfwidth"]);
  if (r.contains("candidates")) {
    c.candidates = points_param(r, "candidates", {});
  } else {
    c.candidates = root_of_unity_grid(a.dim(), param(r, "candidate_grid", std::int64_t{16}));
  }
  c.detect_peaks = param(r, "detect_peaks", c.detect_peaks);
  c.peak_oversampling = param(r, "peak_oversampling", c.peak_oversampling);
  c.peak_threshold = param(r, "peak_threshold", c.peak_threshold);
  c.min_atom_mass = param(r, "min_atom_mass", c.min_atom_mass);
  c.continuum_factor = param(r, "continuum_factor", c.continuum_factor);
  c.correlation_tol = param(r, "correlation_tol", c.correlation_tol);
  c.amplitude_tol = param(r, "amplitude_tol", c.amplitude_tol);
  c.amplitude_fail_spread = param(r, "amplitude_fail_spread", c.amplitude_fail_spread);
  c.mass_tol = param(r, "mass_tol", c.mass_tol);
  c.discrepancy_tol = param(r, "discrepancy_tol", c.discrepancy_tol);
  c.torus_tol = param(r, "torus_tol", c.torus_tol);

  const ClassificationReport report = classify_besicovitch(a, c);
  if (!r.contains("spectral_halfwidth")) r["spectral_halfwidth"] = io::to_json(report.spectral_halfwidth);
  if (!r.contains("ladder")) {
    json l = json::array();
    for (const auto& n : report.ladder) l.push_back(io::to_json(n));
    r["ladder"] = l;
  }
  out.payload = io::to_json(report);
  out.csv = io::correlation_table_csv(report.correlations);
  out.exit_code = exit_code_for(report.verdict);
  return out;
}

}  // namespace wwlab::cli
