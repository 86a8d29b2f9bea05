#include "wwlab/besicovitch.hpp"

#include "wwlab/fft.hpp"

#include <algorithm>
#include <numeric>

namespace wwlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent-with-bounded-Besicovitch";
    case Verdict::fails_1: return "fails-(1)";
    case Verdict::fails_2: return "fails-(2)";
    case Verdict::fails_3: return "fails-(3)";
    case Verdict::inconclusive_2: return "inconclusive-(2)";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<TorusPoint> root_of_unity_grid(int d, std::int64_t resolution) {
  if (d < 1 || resolution < 1) throw Error(ErrorKind::invalid_argument, "root_of_unity_grid: need d >= 1, resolution >= 1");
  std::vector<TorusPoint> out;
  for_each_in_box(MultiIndex::Zero(d), MultiIndex::Constant(d, resolution - 1), [&](const MultiIndex& l) {
    out.emplace_back((l.cast<double>() / static_cast<double>(resolution)).eval());
  });
  return out;
}

namespace {

double fejer_weight(const MultiIndex& m, const MultiIndex& h) {
  double w = 1.0;
  for (Eigen::Index j = 0; j < m.size(); ++j)
    w *= 1.0 - static_cast<double>(std::abs(m[j])) / static_cast<double>(h[j] + 1);
  return w;
}

double fejer_volume(const MultiIndex& h) { return (h.array() + 1).cast<double>().prod(); }

/// Fejer point masses on the uniform grid with `grid` points per axis, row-major.
Eigen::VectorXd fejer_grid(const FourierCoefficients& c, const MultiIndex& h, const MultiIndex& grid) {
  const auto strides = row_major_strides(grid);
  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(grid.prod());
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& m) {
    std::int64_t idx = 0;
    for (Eigen::Index j = 0; j < m.size(); ++j) idx += ((m[j] % grid[j] + grid[j]) % grid[j]) * strides[j];
    buf[idx] += fejer_weight(m, h) * c.at(m);
  });
  dft_nd(buf, grid, true);
  return buf.real() / fejer_volume(h);
}

std::vector<std::int64_t> local_maxima(const Eigen::VectorXd& v, const MultiIndex& grid, double threshold) {
  const auto d = grid.size();
  const auto strides = row_major_strides(grid);
  std::vector<std::int64_t> out;
  MultiIndex l(d);
  for (std::int64_t idx = 0; idx < v.size(); ++idx) {
    if (v[idx] < threshold) continue;
    std::int64_t rest = idx;
    for (Eigen::Index j = 0; j < d; ++j) {
      l[j] = rest / strides[j];
      rest %= strides[j];
    }
    bool is_max = true;
    for_each_in_box(MultiIndex::Constant(d, -1), MultiIndex::Constant(d, 1), [&](const MultiIndex& o) {
      if (!is_max || o.isZero()) return;
      std::int64_t nb = 0;
      for (Eigen::Index j = 0; j < d; ++j) nb += ((l[j] + o[j] + grid[j]) % grid[j]) * strides[j];
      if (v[nb] > v[idx] || (v[nb] == v[idx] && nb < idx)) is_max = false;
    });
    if (is_max) out.push_back(idx);
  }
  return out;
}

TorusPoint refine_peak(const FourierCoefficients& c, const MultiIndex& h, TorusPoint z, double step) {
  double best = fejer_point_mass(c, z, h);
  const int d = z.dim();
  while (step > 1e-12) {
    bool moved = false;
    for (int j = 0; j < d; ++j)
      for (double s : {step, -step}) {
        Eigen::VectorXd angles = z.angles();
        angles[j] += s;
        TorusPoint trial(angles);
        const double v = fejer_point_mass(c, trial, h);
        if (v > best) {
          best = v;
          z = trial;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return z;
}

AmplitudeEvidence amplitude_evidence(const WeightSequence& a, const TorusPoint& z,
                                     const std::vector<MultiIndex>& ladder, double tol) {
  AmplitudeEvidence ev{z, amplitude_ladder(a, z, ladder), 0.0, 0.0, false};
  const auto top = ev.ladder.size() - 1;
  if (top > 0) ev.step = std::abs(ev.ladder[top] - ev.ladder[top - 1]);
  for (Eigen::Index r = 0; r <= top; ++r) ev.spread = std::max(ev.spread, std::abs(ev.ladder[r] - ev.ladder[top]));
  ev.stable = top > 0 && ev.step < tol;
  return ev;
}

bool within(const TorusPoint& a, const TorusPoint& b, const MultiIndex& h, double factor) {
  for (int j = 0; j < a.dim(); ++j)
    if (circular_distance(a.angle(j), b.angle(j)) > factor / static_cast<double>(h[j] + 1)) return false;
  return true;
}

}  // namespace

double fejer_point_mass(const FourierCoefficients& coeffs, const TorusPoint& z, const MultiIndex& h) {
  require_same_dim(coeffs.halfwidth(), h, "fejer_point_mass");
  if (z.dim() != coeffs.dim()) throw Error(ErrorKind::dimension_mismatch, "fejer_point_mass: torus point dimension");
  if (!all_nonnegative(h) || !componentwise_le(h, coeffs.halfwidth()))
    throw Error(ErrorKind::out_of_range, "fejer_point_mass: halfwidth exceeds coefficient box");
  const TorusPoint zbar = z.conjugate();
  CompensatedSum<cplx> acc;
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& m) { acc.add(fejer_weight(m, h) * zbar.power(m) * coeffs.at(m)); });
  return acc.value().real() / fejer_volume(h);
}

ClassificationReport classify_besicovitch(const WeightSequence& a, const ClassificationConfig& config) {
  const int d = a.dim();
  if (config.candidates.empty()) throw Error(ErrorKind::invalid_argument, "classify_besicovitch: empty candidate grid");
  for (const auto& z : config.candidates)
    if (z.dim() != d) throw Error(ErrorKind::dimension_mismatch, "classify_besicovitch: candidate dimension");

  ClassificationReport report;
  report.spectral_halfwidth = config.spectral_halfwidth.size()
                                  ? config.spectral_halfwidth
                                  : MultiIndex::Constant(d, d == 1 ? 128 : d == 2 ? 16 : 4);
  const MultiIndex& h = report.spectral_halfwidth;
  require_same_dim(a.extent(), h, "classify_besicovitch halfwidth");
  if (!all_nonnegative(h)) throw Error(ErrorKind::invalid_argument, "classify_besicovitch: halfwidth < 0");

  const MultiIndex unbiased_top = (a.upper() - h).eval();
  if (config.ladder.empty()) {
    if ((unbiased_top.array() < 1).any())
      throw Error(ErrorKind::invalid_argument, "classify_besicovitch: sequence box too small for halfwidth " + to_string(h));
    report.ladder = geometric_ladder(unbiased_top, config.ladder_rungs, config.ladder_ratio);
  } else {
    report.ladder = config.ladder;
  }
  validate_ladder(report.ladder, d);
  const MultiIndex& top = report.ladder.back();
  if (!componentwise_le(top, unbiased_top))
    report.notes.push_back("ladder top exceeds the stored box minus the halfwidth; correlations are biased toward 0");

  report.correlations = correlation_table(a, h, report.ladder, config.correlation_tol);
  const FourierCoefficients& c = report.correlations.entries;
  report.total_mass = c.at(MultiIndex::Zero(d)).real();
  report.wiener_value = wiener_continuity(c, h);

  for (const auto& z : config.candidates)
    report.candidates.push_back(amplitude_evidence(a, z, report.ladder, config.amplitude_tol));

  const double scale = std::max(report.total_mass, 0.0);
  if (scale <= 1e-14 * std::max(1.0, a.sup_norm() * a.sup_norm())) {
    report.verdict = Verdict::consistent;
    report.notes.push_back("sequence vanishes on the ladder boxes: empty spectrum");
    return report;
  }

  // candidate atoms: caller grid plus refined Fejer peaks
  struct Candidate {
    TorusPoint point;
    double mass;
    bool from_peak;
  };
  std::vector<Candidate> pool;
  for (const auto& z : config.candidates) pool.push_back({z, fejer_point_mass(c, z, h), false});
  if (config.detect_peaks) {
    const MultiIndex grid = ((h.array() + 1) * std::max(config.peak_oversampling, 1)).matrix();
    const Eigen::VectorXd values = fejer_grid(c, h, grid);
    const auto strides = row_major_strides(grid);
    for (std::int64_t idx : local_maxima(values, grid, config.peak_threshold * scale)) {
      Eigen::VectorXd angles(d);
      std::int64_t rest = idx;
      for (int j = 0; j < d; ++j) {
        angles[j] = static_cast<double>(rest / strides[j]) / static_cast<double>(grid[j]);
        rest %= strides[j];
      }
      const TorusPoint z = refine_peak(c, h, TorusPoint(angles), 1.0 / static_cast<double>(grid.maxCoeff()));
      pool.push_back({z, fejer_point_mass(c, z, h), true});
    }
  }
  const double floor = std::max(config.min_atom_mass, config.continuum_factor / fejer_volume(h)) * scale;
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pool[i].mass > pool[j].mass; });
  for (std::size_t i : order) {
    const auto& cand = pool[i];
    if (cand.mass < floor) break;
    const bool shadowed = std::any_of(report.atoms.begin(), report.atoms.end(),
                                      [&](const AtomEvidence& at) { return within(at.point, cand.point, h, 3.0); });
    if (shadowed) continue;
    AtomEvidence atom;
    atom.point = cand.point;
    atom.mass = cand.mass;
    atom.point_mass = point_mass(c, cand.point, h).mass;
    atom.amplitude = amplitude_evidence(a, cand.point, report.ladder, config.amplitude_tol);
    atom.discrepancy = atom.mass - std::norm(atom.amplitude.ladder[atom.amplitude.ladder.size() - 1]);
    atom.from_peak = cand.from_peak;
    report.atoms.push_back(std::move(atom));
  }
  CompensatedSum<double> atomic;
  for (const auto& at : report.atoms) atomic.add(at.mass);
  report.atomic_mass = atomic.value();
  report.mass_deficit = report.total_mass - report.atomic_mass;

  if (report.ladder.size() < 2) {
    report.verdict = Verdict::inconclusive;
    report.notes.push_back("a single ladder rung gives no stability evidence");
    return report;
  }
  if (!report.correlations.appears_in_S) {
    report.verdict = Verdict::fails_1;
    report.notes.push_back("correlation estimates do not stabilize along the ladder");
    return report;
  }
  if (report.mass_deficit > config.mass_tol * scale) {
    report.verdict = Verdict::fails_1;
    report.notes.push_back("atoms do not carry the total spectral mass");
    return report;
  }
  const double dtol = config.discrepancy_tol * scale;
  for (const auto& at : report.atoms) {
    if (std::abs(at.discrepancy) <= dtol) continue;
    bool every_rung = true;
    for (Eigen::Index r = 0; r < at.amplitude.ladder.size(); ++r)
      if (std::abs(std::norm(at.amplitude.ladder[r]) - at.mass) <= dtol) every_rung = false;
    if (at.amplitude.stable || every_rung) {
      report.verdict = Verdict::fails_3;
      report.notes.push_back("point mass differs from squared amplitude at an atom");
      return report;
    }
  }
  auto spread_fail = [&](const AmplitudeEvidence& ev) { return ev.spread > config.amplitude_fail_spread; };
  bool fail2 = std::any_of(report.candidates.begin(), report.candidates.end(), spread_fail);
  bool unstable = std::any_of(report.candidates.begin(), report.candidates.end(),
                              [](const AmplitudeEvidence& ev) { return !ev.stable; });
  for (const auto& at : report.atoms) {
    fail2 = fail2 || spread_fail(at.amplitude);
    unstable = unstable || !at.amplitude.stable;
  }
  if (fail2) {
    report.verdict = Verdict::fails_2;
    report.notes.push_back("amplitude estimates spread beyond the failure threshold");
  } else if (unstable) {
    report.verdict = Verdict::inconclusive_2;
    report.notes.push_back("some amplitude ladder has not stabilized");
  } else {
    report.verdict = Verdict::consistent;
  }
  return report;
}

}  // namespace wwlab
