#include "wwlab/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace wwlab::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::io, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + ": expected an integer");
  return j.get<std::int64_t>();
}

std::uint32_t float_bits(float f) { return std::bit_cast<std::uint32_t>(f); }
float bits_float(std::uint32_t u) { return std::bit_cast<float>(u); }

}  // namespace

json to_json(const cplx& v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail("complex value must be [re, im] or a number");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json to_json(const MultiIndex& k) {
  json out = json::array();
  for (Eigen::Index i = 0; i < k.size(); ++i) out.push_back(k[i]);
  return out;
}

MultiIndex multi_index_from_json(const json& j) {
  if (j.is_number_integer()) return multi_index({j.get<std::int64_t>()});
  if (!j.is_array() || j.empty()) fail("multi-index must be a non-empty integer array");
  MultiIndex k(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) k[static_cast<Eigen::Index>(i)] = integer(j[i], "multi-index component");
  return k;
}

json to_json(const TorusPoint& z) { return to_json(z.angles()); }

TorusPoint torus_point_from_json(const json& j) {
  if (j.is_number()) return TorusPoint::from_angles({j.get<double>()});
  if (!j.is_array() || j.empty()) fail("torus point must be a non-empty array of angle fractions");
  Eigen::VectorXd a(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) a[static_cast<Eigen::Index>(i)] = number(j[i], "angle");
  return TorusPoint(a);
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

json to_json(const Operator& x) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < x.cols(); ++c) row.push_back(to_json(x(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator operator_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail("operator must be a non-empty array of rows");
  const auto n = j.size();
  Operator x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) fail("operator must be square");
    for (std::size_t c = 0; c < n; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  if (!x.allFinite()) fail("operator has non-finite entries");
  return x;
}

json to_json(const MatrixSystem& sys) {
  json us = json::array();
  for (const auto& u : sys.unitaries()) us.push_back(to_json(u));
  return json{{"N", sys.size()}, {"unitaries", us}};
}

MatrixSystem system_from_json(const json& j) {
  const auto N = integer(field(j, "N"), "N");
  const json& us = field(j, "unitaries");
  if (!us.is_array() || us.empty()) fail("unitaries must be a non-empty array");
  std::vector<Operator> ops;
  for (const auto& u : us) {
    ops.push_back(operator_from_json(u));
    if (ops.back().rows() != N) throw Error(ErrorKind::dimension_mismatch, "unitary size differs from N");
  }
  const double tol = j.contains("tolerance") ? number(j["tolerance"], "tolerance") : 1e-10;
  return MatrixSystem(std::move(ops), tol);
}

json to_json(const TrigPolynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"angles", to_json(t.frequency)}, {"coeff", to_json(t.coefficient)}});
  return json{{"kind", "trigpoly"}, {"d", p.dim()}, {"terms", terms}};
}

TrigPolynomial trig_polynomial_from_json(const json& j) {
  const int d = static_cast<int>(integer(field(j, "d"), "d"));
  std::vector<TrigTerm> terms;
  for (const auto& t : field(j, "terms")) terms.push_back({torus_point_from_json(field(t, "angles")), complex_from_json(field(t, "coeff"))});
  return TrigPolynomial(d, std::move(terms));
}

WeightSequence weight_sequence_from_json(const json& j) {
  const MultiIndex box = multi_index_from_json(field(j, "box"));
  if (!all_nonnegative(box)) fail("box extents must be >= 0");
  if (j.contains("generator")) {
    const json& g = j["generator"];
    const std::string kind = field(g, "kind").get<std::string>();
    if (kind == "trigpoly") {
      auto p = trig_polynomial_from_json(g);
      if (p.dim() != box.size()) throw Error(ErrorKind::dimension_mismatch, "generator dimension differs from box");
      return WeightSequence::from_generator(std::move(p), box);
    }
    if (kind == "example59") {
      const int d = g.contains("d") ? static_cast<int>(integer(g["d"], "d")) : static_cast<int>(box.size());
      if (d != box.size()) throw Error(ErrorKind::dimension_mismatch, "generator dimension differs from box");
      const double base = g.contains("log_base") ? number(g["log_base"], "log_base") : std::numbers::e;
      return WeightSequence::from_generator(example59(d, base), box);
    }
    fail("unknown generator kind \"" + kind + "\"");
  }
  if (j.contains("d") && integer(j["d"], "d") != box.size()) throw Error(ErrorKind::dimension_mismatch, "d differs from box length");
  const json& vals = field(j, "values");
  if (!vals.is_array() || vals.empty()) fail("values must be a non-empty array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(vals[i]);
  if (static_cast<double>(v.size()) != box_volume(box))
    throw Error(ErrorKind::dimension_mismatch, "values has " + std::to_string(v.size()) + " entries, box " + to_string(box) + " needs " +
                                                   std::to_string(static_cast<std::int64_t>(box_volume(box))));
  if (j.contains("lower")) return WeightSequence::from_values(multi_index_from_json(j["lower"]), box, std::move(v));
  return WeightSequence::from_values(box, std::move(v));
}

json to_json(const WeightSequence& a) {
  json out{{"d", a.dim()}, {"box", to_json(a.extent())}};
  if (!a.lower().isZero()) out["lower"] = to_json(a.lower());
  if (const auto* p = std::get_if<TrigPolynomial>(&a.generator())) {
    out["generator"] = to_json(*p);
  } else if (const auto* e = std::get_if<Example59>(&a.generator())) {
    out["generator"] = {{"kind", "example59"}, {"d", e->d}, {"log_base", e->log_base}};
  } else {
    out["values"] = to_json(a.values());
  }
  return out;
}

json to_json(const FourierCoefficients& c) { return json{{"box", to_json(c.halfwidth())}, {"coeffs", to_json(c.values())}}; }

FourierCoefficients fourier_from_json(const json& j) {
  const MultiIndex h = multi_index_from_json(field(j, "box"));
  const json& cs = field(j, "coeffs");
  if (!cs.is_array()) fail("coeffs must be an array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(cs.size()));
  for (std::size_t i = 0; i < cs.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(cs[i]);
  return FourierCoefficients(h, std::move(v));
}

json to_json(const TorusMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"angles", to_json(a.point)}, {"mass", a.mass}});
  json out{{"d", mu.dim()}, {"atoms", atoms}};
  if (mu.density()) out["density_fourier"] = to_json(*mu.density());
  return out;
}

TorusMeasure measure_from_json(const json& j) {
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"]) atoms.push_back({torus_point_from_json(field(a, "angles")), number(field(a, "mass"), "mass")});
  std::optional<FourierCoefficients> density;
  if (j.contains("density_fourier")) density = fourier_from_json(j["density_fourier"]);
  int d = 0;
  if (j.contains("d")) d = static_cast<int>(integer(j["d"], "d"));
  else if (!atoms.empty()) d = atoms.front().point.dim();
  else if (density) d = density->dim();
  else fail("measure dimension cannot be inferred; give \"d\"");
  return TorusMeasure(d, std::move(atoms), std::move(density));
}

json to_json(const CorrelationTable& t, bool with_diagnostics) {
  json entries = json::array();
  const MultiIndex& h = t.halfwidth;
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& m) {
    const auto row = t.entries.linear_index(m);
    json e{{"m", to_json(m)}, {"value", to_json(t.entries.values()[row])}, {"ladder_spread", t.ladder_spread[row]}};
    if (with_diagnostics) e["ladder"] = to_json(Eigen::VectorXcd(t.diagnostics.row(row).transpose()));
    entries.push_back(std::move(e));
  });
  json ladder = json::array();
  for (const auto& n : t.ladder) ladder.push_back(to_json(n));
  return json{{"halfwidth", to_json(h)},
              {"ladder", ladder},
              {"tolerance", t.tolerance},
              {"appears_in_S", t.appears_in_S},
              {"max_hermitian_defect", t.max_hermitian_defect()},
              {"entries", entries}};
}

namespace {

json to_json_amplitude(const AmplitudeEvidence& ev) {
  return json{{"angles", to_json(ev.point)},
              {"ladder", to_json(ev.ladder)},
              {"step", ev.step},
              {"spread", ev.spread},
              {"stable", ev.stable}};
}

json ladder_json(const std::vector<MultiIndex>& ladder) {
  json out = json::array();
  for (const auto& n : ladder) out.push_back(to_json(n));
  return out;
}

}  // namespace

json to_json(const ClassificationReport& r) {
  json atoms = json::array();
  for (const auto& a : r.atoms) {
    atoms.push_back({{"angles", to_json(a.point)},
                     {"mass", a.mass},
                     {"point_mass", a.point_mass},
                     {"amplitude", to_json_amplitude(a.amplitude)},
                     {"amplitude_sq_top", std::norm(a.amplitude.ladder[a.amplitude.ladder.size() - 1])},
                     {"discrepancy", a.discrepancy},
                     {"from_peak", a.from_peak}});
  }
  json cands = json::array();
  for (const auto& c : r.candidates) cands.push_back(to_json_amplitude(c));
  return json{{"verdict", to_string(r.verdict)},
              {"ladder", ladder_json(r.ladder)},
              {"spectral_halfwidth", to_json(r.spectral_halfwidth)},
              {"appears_in_S", r.correlations.appears_in_S},
              {"total_mass", r.total_mass},
              {"atomic_mass", r.atomic_mass},
              {"mass_deficit", r.mass_deficit},
              {"wiener_value", r.wiener_value},
              {"wiener_normalization", "1/prod(2h+1)"},
              {"atoms", atoms},
              {"candidates", cands},
              {"notes", r.notes},
              {"correlations", to_json(r.correlations, false)}};
}

json to_json(const WienerLadder& w) {
  return json{{"halfwidths", ladder_json(w.halfwidths)},
              {"values", to_json(w.values)},
              {"tolerance", w.tolerance},
              {"empirically_continuous", w.empirically_continuous},
              {"normalization", "1/prod(2h+1)"}};
}

json to_json(const AffinityResult& r) {
  return json{{"value", r.value},
              {"atomic_part", r.atomic_part},
              {"continuous_part", r.continuous_part},
              {"resolution", r.resolution},
              {"converged", r.converged}};
}

json to_json(const AffinitySequenceReport& r) {
  json out{{"ladder", ladder_json(r.ladder)}, {"values", to_json(r.values)}, {"tolerance", r.tolerance}, {"violation", r.violation}};
  out["bound"] = r.bound ? json(*r.bound) : json(nullptr);
  return out;
}

json to_json(const PointBoundReport& r) {
  return json{{"angles", to_json(r.z)},
              {"ladder", ladder_json(r.ladder)},
              {"spectral_halfwidth", to_json(r.spectral_halfwidth)},
              {"amplitude", to_json(r.amplitude)},
              {"point_mass", to_json(r.point_mass)},
              {"bound", to_json(r.bound)},
              {"tolerance", r.tolerance},
              {"violation", r.violation}};
}

json to_json(const WeakConvergenceReport& r) {
  json pairings = json::array();
  for (Eigen::Index f = 0; f < r.pairings.rows(); ++f) pairings.push_back(to_json(Eigen::VectorXcd(r.pairings.row(f).transpose())));
  return json{{"ladder", ladder_json(r.ladder)},
              {"pairings", pairings},
              {"target", to_json(r.target)},
              {"top_discrepancy", to_json(r.top_discrepancy)},
              {"max_discrepancy", r.max_discrepancy}};
}

json to_json(const VdcBound& b) {
  return json{{"lhs", b.lhs},
              {"rhs", b.rhs},
              {"H", b.H},
              {"groups",
               {{"diagonal", b.diagonal_group},
                {"shift1", b.shift1_group},
                {"shift2", b.shift2_group},
                {"joint", b.joint_group},
                {"mixed", b.mixed_group}}},
              {"outside_hypothesis", b.outside_hypothesis}};
}

namespace {

json case_json(const VdcCase& c) {
  return json{{"trial", c.trial}, {"dim", c.dim}, {"n", {c.n1, c.n2}}, {"h", {c.h1, c.h2}}, {"padded", c.padded},
              {"lhs", c.lhs}, {"rhs", c.rhs}, {"outside_hypothesis", c.outside_hypothesis}};
}

}  // namespace

json to_json(const VdcFuzzReport& r) {
  json viol = json::array(), flagged = json::array();
  for (const auto& c : r.violating) viol.push_back(case_json(c));
  for (const auto& c : r.flagged) flagged.push_back(case_json(c));
  return json{{"checks", r.checks},
              {"violations", r.violations},
              {"outside_hypothesis", r.outside_hypothesis},
              {"outside_hypothesis_failures", r.outside_violations},
              {"min_slack", r.min_slack},
              {"max_ratio", r.max_ratio},
              {"zero_trial", {{"lhs", r.zero_lhs}, {"rhs", r.zero_rhs}}},
              {"violating_cases", viol},
              {"flagged_cases", flagged}};
}

json to_json(const WwProofReport& r) {
  return json{{"n_terms", {r.n1, r.n2}},
              {"h", {r.h1, r.h2}},
              {"grid_sup_squared", r.grid_sup_squared},
              {"argmax", to_json(r.argmax)},
              {"extended_bound", to_json(r.extended)},
              {"padded_bound", to_json(r.padded)},
              {"limit_bound", r.limit_bound},
              {"correlation_average", r.correlation_average},
              {"wiener_average", r.wiener_average},
              {"violation", r.violation},
              {"outside_hypothesis", r.outside_hypothesis}};
}

json to_json(const KroneckerDecomposition& k) {
  const auto defects = projector_defects(k);
  const auto lattice = eigenvalue_lattice(k);
  json lat = json::array();
  for (Eigen::Index c = 0; c < lattice.values.cols(); ++c)
    lat.push_back({{"mu", to_json(Eigen::VectorXcd(lattice.values.col(c)))}, {"multiplicity", lattice.multiplicity[static_cast<std::size_t>(c)]}});
  return json{{"operator_space_dim", k.kronecker_projector.rows()},
              {"kronecker_rank", static_cast<std::int64_t>(std::llround(k.kronecker_projector.trace().real()))},
              {"max_eigen_residual", k.max_eigen_residual},
              {"defects",
               {{"idempotence", defects.idempotence},
                {"self_adjointness", defects.self_adjointness},
                {"resolution_of_identity", defects.resolution_of_identity},
                {"complement_norm", defects.complement_norm}}},
              {"eigenvalue_lattice", lat},
              {"note", "finite dimension: every Ad(U_j) is unitary on operator space, so the orthocomplement is {0}"}};
}

json to_json(const AuResult& r) {
  return json{{"achieved_sup", r.achieved_sup},
              {"complement_trace", r.complement_trace},
              {"removed", r.removed},
              {"sup_by_removed", r.sup_by_removed},
              {"projection", to_json(r.e.matrix())}};
}

template <class T>
json to_json(const IdentityCheck<T>& c) {
  return json{{"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"deviation", c.deviation}, {"outside_hypothesis", c.outside_hypothesis}};
}
template json to_json(const IdentityCheck<cplx>&);
template json to_json(const IdentityCheck<Operator>&);

std::string correlation_table_csv(const CorrelationTable& t) {
  std::ostringstream out;
  out.precision(17);
  for (int j = 0; j < t.dim(); ++j) out << "m" << (j + 1) << ",";
  out << "re,im,ladder_spread\n";
  for_each_in_box((-t.halfwidth).eval(), t.halfwidth, [&](const MultiIndex& m) {
    const auto row = t.entries.linear_index(m);
    for (Eigen::Index j = 0; j < m.size(); ++j) out << m[j] << ",";
    const cplx v = t.entries.values()[row];
    out << v.real() << "," << v.imag() << "," << t.ladder_spread[row] << "\n";
  });
  return out.str();
}

SampleStream read_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open stream file " + path.string());
  std::string header;
  if (!std::getline(in, header)) fail("stream file has no header line");
  json h;
  try {
    h = json::parse(header);
  } catch (const json::exception& e) {
    fail(std::string("stream header is not JSON: ") + e.what());
  }
  const MultiIndex box = multi_index_from_json(field(h, "box"));
  if (h.contains("d") && integer(h["d"], "d") != box.size()) throw Error(ErrorKind::dimension_mismatch, "stream header: d differs from box");
  if (!all_nonnegative(box)) fail("stream box must be >= 0");
  const auto count = static_cast<std::size_t>(box_volume(box));
  std::vector<unsigned char> bytes(count * 8);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) fail("stream file is shorter than its header box");
  Eigen::VectorXcd values(static_cast<Eigen::Index>(count));
  auto word = [&](std::size_t at) {
    return static_cast<std::uint32_t>(bytes[at]) | (static_cast<std::uint32_t>(bytes[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes[at + 2]) << 16) | (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
  };
  for (std::size_t i = 0; i < count; ++i)
    values[static_cast<Eigen::Index>(i)] = cplx(bits_float(word(8 * i)), bits_float(word(8 * i + 4)));
  return make_stream(box, std::move(values));
}

void write_stream(const std::filesystem::path& path, const SampleStream& stream) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write stream file " + path.string());
  out << json{{"d", stream.dim()}, {"box", to_json(stream.n)}}.dump() << '\n';
  std::vector<unsigned char> bytes;
  bytes.reserve(static_cast<std::size_t>(stream.values.size()) * 8);
  auto put = [&](float f) {
    const std::uint32_t u = float_bits(f);
    for (int s = 0; s < 32; s += 8) bytes.push_back(static_cast<unsigned char>((u >> s) & 0xffu));
  };
  for (Eigen::Index i = 0; i < stream.values.size(); ++i) {
    put(static_cast<float>(stream.values[i].real()));
    put(static_cast<float>(stream.values[i].imag()));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << text;
}

}  // namespace wwlab::io
