#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace wwlab::cli {

namespace {

std::string ladder_csv(const WienerLadder& w) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t j = 0; j < static_cast<std::size_t>(w.halfwidths.front().size()); ++j) s << "h" << (j + 1) << ",";
  s << "wiener_value\n";
  for (std::size_t i = 0; i < w.halfwidths.size(); ++i) {
    for (Eigen::Index j = 0; j < w.halfwidths[i].size(); ++j) s << w.halfwidths[i][j] << ",";
    s << w.values[static_cast<Eigen::Index>(i)] << "\n";
  }
  return s.str();
}

AffinityOptions affinity_options(json& r) {
  AffinityOptions o;
  o.relative_tolerance = param(r, "relative_tolerance", o.relative_tolerance);
  o.initial_resolution = param(r, "initial_resolution", o.initial_resolution);
  o.max_points = param(r, "max_points", o.max_points);
  return o;
}

std::optional<TorusMeasure> optional_measure(const json& r, const char* key) {
  if (!r.contains(key)) return std::nullopt;
  return io::measure_from_json(r[key]);
}

}  // namespace

Outcome spectral_estimate(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  const double tol = param(r, "tolerance", 0.05);

  if (r.contains("measure")) {
    const TorusMeasure mu = load_measure(r, "measure");
    const int d = mu.dim();
    const auto halfwidths = ladder_param(r, "halfwidths", constant_index(d, d == 1 ? 512 : 64));
    const MultiIndex top = halfwidths.back();
    FourierCoefficients c = FourierCoefficients::zeros(top);
    for_each_in_box((-top).eval(), top, [&](const MultiIndex& m) { c.ref(m) = fourier_stieltjes(mu, m); });
    const WienerLadder w = wiener_ladder(c, halfwidths, tol);
    json masses = json::array();
    for (const auto& z : points_param(r, "points", {})) {
      if (z.dim() != d) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from the measure");
      masses.push_back({{"angles", io::to_json(z)}, {"point_mass", point_mass(c, z, top).mass}});
    }
    out.payload = json{{"source", "measure"},
                       {"total_mass", mu.total_mass()},
                       {"atomic_mass", mu.atomic_mass()},
                       {"wiener", io::to_json(w)},
                       {"point_masses", masses}};
    out.csv = ladder_csv(w);
    return out;
  }

  const WeightSequence a = load_sequence(r, "input", common);
  const int d = a.dim();
  const MultiIndex n = param_index(r, "truncation", a.upper());
  require_same_dim(n, a.extent(), "truncation");
  const EmpiricalDensity density = empirical_density(a, n);
  const auto halfwidths = ladder_param(r, "halfwidths", n);
  for (const auto& h : halfwidths)
    if (!componentwise_le(h, n)) throw Error(ErrorKind::invalid_argument, "halfwidths must not exceed the truncation");
  const WienerLadder w = wiener_ladder(density.fourier, halfwidths, tol);
  json masses = json::array();
  for (const auto& z : points_param(r, "points", {})) {
    if (z.dim() != d) throw Error(ErrorKind::dimension_mismatch, "point dimension differs from the sequence");
    masses.push_back({{"angles", io::to_json(z)},
                      {"point_mass", point_mass(density, z).mass},
                      {"fejer_mass", fejer_point_mass(density.fourier, z, halfwidths.back())}});
  }
  const std::int64_t grid = param(r, "grid", std::int64_t{0});
  json samples = json::array();
  std::ostringstream csv;
  csv.precision(17);
  if (grid > 0) {
    for (int j = 0; j < d; ++j) csv << "theta" << (j + 1) << ",";
    csv << "density\n";
    for (const auto& z : root_of_unity_grid(d, grid)) {
      const double f = density.from_coefficients(z);
      samples.push_back({{"angles", io::to_json(z)}, {"density", f}});
      for (int j = 0; j < d; ++j) csv << z.angle(j) << ",";
      csv << f << "\n";
    }
    out.csv = csv.str();
  } else {
    out.csv = ladder_csv(w);
  }
  out.payload = json{{"source", "sequence"},
                     {"truncation", io::to_json(n)},
                     {"total_mass", density.total_mass()},
                     {"wiener", io::to_json(w)},
                     {"point_masses", masses},
                     {"density_samples", samples}};
  return out;
}

Outcome spectral_affinity(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;

  if (r.contains("P") || r.contains("Q")) {
    const TorusMeasure P = load_measure(r, "P");
    const TorusMeasure Q = load_measure(r, "Q");
    const AffinityOptions o = affinity_options(r);
    out.payload = json{{"affinity", io::to_json(affinity(P, Q, o))}};
    return out;
  }

  const WeightSequence a = load_sequence(r, "a", common);
  const double tol = param(r, "tolerance", 0.02);
  json payload = json::object();
  if (r.contains("b") || r.contains("b_path")) {
    const WeightSequence b = load_sequence(r, "b", common);
    require_same_dim(a.extent(), b.extent(), "a and b");
    const auto ladder = ladder_param(r, "ladder", a.upper().cwiseMin(b.upper()));
    const AffinityOptions o = affinity_options(r);
    payload["sequences"] =
        io::to_json(affinity_sequences(a, b, ladder, optional_measure(r, "sigma_a"), optional_measure(r, "sigma_b"), tol, o));
  }
  if (r.contains("z")) {
    const TorusPoint z = io::torus_point_from_json(r["z"]);
    const MultiIndex h0 = constant_index(a.dim(), a.dim() == 1 ? 128 : 16).cwiseMin(a.extent() / 2);
    const MultiIndex h = param_index(r, "spectral_halfwidth", h0);
    const auto ladder = ladder_param(r, "pointbound_ladder", (a.upper() - h).cwiseMax(0));
    payload["pointbound"] = io::to_json(ww_pointbound(a, z, ladder, h, tol));
  }
  if (payload.empty()) throw Error(ErrorKind::invalid_argument, "affinity needs measures P and Q, sequences a and b, or a with z");
  out.payload = payload;
  return out;
}

}  // namespace wwlab::cli
