#include "wwlab/spectral.hpp"

#include "wwlab/fft.hpp"

#include <algorithm>

namespace wwlab {

namespace {

std::int64_t wrap(std::int64_t k, std::int64_t period) {
  const std::int64_t r = k % period;
  return r < 0 ? r + period : r;
}

/// g(l) = sum_k v(k) e^{sign * 2 pi i k.l / G} over the uniform grid l in [0, G)^d.
Eigen::VectorXcd evaluate_on_grid(const FourierCoefficients& v, const MultiIndex& grid, int sign) {
  const auto strides = row_major_strides(grid);
  Eigen::VectorXcd folded = Eigen::VectorXcd::Zero(grid.prod());
  const MultiIndex& h = v.halfwidth();
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& k) {
    std::int64_t idx = 0;
    for (Eigen::Index j = 0; j < k.size(); ++j) idx += wrap(k[j], grid[j]) * strides[j];
    folded[idx] += v.values()[v.linear_index(k)];
  });
  dft_nd(folded, grid, sign < 0);
  return folded;
}

TorusPoint grid_point(std::int64_t linear, const MultiIndex& grid) {
  Eigen::VectorXd angles(grid.size());
  for (Eigen::Index j = grid.size() - 1; j >= 0; --j) {
    angles[j] = static_cast<double>(linear % grid[j]) / static_cast<double>(grid[j]);
    linear /= grid[j];
  }
  return TorusPoint(angles);
}

void require_dim(int expected, int got, const char* what) {
  if (expected != got) throw Error(ErrorKind::dimension_mismatch, std::string(what) + ": dimension mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// TorusMeasure

TorusMeasure::TorusMeasure(int d, std::vector<Atom> atoms, std::optional<FourierCoefficients> density,
                           double torus_tol)
    : d_(d), atoms_(std::move(atoms)), density_(std::move(density)) {
  if (d_ < 1) throw Error(ErrorKind::invalid_argument, "TorusMeasure: dimension must be >= 1");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    require_dim(d_, atoms_[i].point.dim(), "TorusMeasure atom");
    if (!(atoms_[i].mass > 0.0) || !std::isfinite(atoms_[i].mass))
      throw Error(ErrorKind::invalid_argument, "TorusMeasure: atom masses must be positive and finite");
    for (std::size_t j = 0; j < i; ++j)
      if (atoms_[i].point.approx_equal(atoms_[j].point, torus_tol))
        throw Error(ErrorKind::invalid_argument, "TorusMeasure: repeated atom");
  }
  if (density_) {
    require_dim(d_, density_->dim(), "TorusMeasure density");
    const MultiIndex& h = density_->halfwidth();
    const double scale = std::max(1.0, density_->values().cwiseAbs().maxCoeff());
    for_each_in_box((-h).eval(), h, [&](const MultiIndex& k) {
      if (std::abs(density_->at((-k).eval()) - std::conj(density_->at(k))) > 1e-9 * scale)
        throw Error(ErrorKind::invalid_argument, "TorusMeasure: density coefficients are not Hermitian");
    });
    const MultiIndex grid = (2 * h.array() + 2).matrix();
    const Eigen::VectorXcd values = evaluate_on_grid(*density_, grid, +1);
    if (values.real().minCoeff() < -1e-9 * scale)
      throw Error(ErrorKind::invalid_argument, "TorusMeasure: density is negative on the verification grid");
  }
}

TorusMeasure TorusMeasure::dirac(const TorusPoint& z, double mass) { return TorusMeasure(z.dim(), {{z, mass}}); }

TorusMeasure TorusMeasure::haar(int d) {
  Eigen::VectorXcd one(1);
  one[0] = 1.0;
  return TorusMeasure(d, {}, FourierCoefficients(MultiIndex::Zero(d), one));
}

double TorusMeasure::atomic_mass() const {
  CompensatedSum<double> acc;
  for (const auto& a : atoms_) acc.add(a.mass);
  return acc.value();
}

double TorusMeasure::total_mass() const {
  return atomic_mass() + (density_ ? density_->at(MultiIndex::Zero(d_)).real() : 0.0);
}

double TorusMeasure::density_at(const TorusPoint& z) const {
  if (!density_) return 0.0;
  require_dim(d_, z.dim(), "TorusMeasure::density_at");
  CompensatedSum<cplx> acc;
  const MultiIndex& h = density_->halfwidth();
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& k) { acc.add(density_->at(k) * z.power(k)); });
  return acc.value().real();
}

cplx fourier_stieltjes(const TorusMeasure& mu, const MultiIndex& m) {
  require_dim(mu.dim(), static_cast<int>(m.size()), "fourier_stieltjes");
  CompensatedSum<cplx> acc;
  for (const auto& a : mu.atoms()) acc.add(a.mass * a.point.power(m));
  if (mu.density()) acc.add(mu.density()->at((-m).eval()));
  return acc.value();
}

// ---------------------------------------------------------------------------
// empirical densities

namespace {

Eigen::VectorXcd extract_window(const WeightSequence& a, const MultiIndex& n) {
  require_same_dim(a.extent(), n, "empirical_density");
  if (!all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, "empirical_density: n must be >= 0");
  if (!(a.lower().array() <= 0).all() || !(a.upper().array() >= n.array()).all())
    throw Error(ErrorKind::out_of_range, "empirical_density: n=" + to_string(n) + " exceeds the sequence box");
  Eigen::VectorXcd w(static_cast<Eigen::Index>(box_volume(n)));
  Eigen::Index i = 0;
  for_each_in_box(MultiIndex::Zero(n.size()), n, [&](const MultiIndex& k) { w[i++] = a(k); });
  return w;
}

std::int64_t fft_size(std::int64_t minimum) {
  std::int64_t s = 1;
  while (s < minimum) s <<= 1;
  return s;
}

double exact_mass(const Eigen::VectorXcd& window, double volume) {
  CompensatedSum<double> acc;
  for (Eigen::Index i = 0; i < window.size(); ++i) acc.add(std::norm(window[i]));
  return acc.value() / volume;
}

}  // namespace

EmpiricalDensity empirical_density(const WeightSequence& a, const MultiIndex& n) {
  EmpiricalDensity ed{n, extract_window(a, n), FourierCoefficients::zeros(n)};
  const auto d = n.size();
  const double volume = box_volume(n);

  MultiIndex padded(d);
  for (Eigen::Index j = 0; j < d; ++j) padded[j] = fft_size(2 * n[j] + 1);
  const auto pstrides = row_major_strides(padded);
  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(padded.prod());
  {
    Eigen::Index i = 0;
    for_each_in_box(MultiIndex::Zero(d), n, [&](const MultiIndex& k) {
      buf[(k.array() * pstrides.array()).sum()] = ed.window[i++];
    });
  }
  dft_nd(buf, padded, true);
  buf = buf.cwiseAbs2().cast<cplx>();
  dft_nd(buf, padded, false);
  const double scale = 1.0 / (static_cast<double>(padded.prod()) * volume);

  auto raw = [&](const MultiIndex& m) {
    std::int64_t idx = 0;
    for (Eigen::Index j = 0; j < d; ++j) idx += wrap(m[j], padded[j]) * pstrides[j];
    return buf[idx] * scale;
  };
  for_each_in_box((-n).eval(), n, [&](const MultiIndex& m) {
    // symmetrize so that c(-m) = conj(c(m)) holds exactly
    ed.fourier.ref(m) = 0.5 * (raw(m) + std::conj(raw((-m).eval())));
  });
  ed.fourier.ref(MultiIndex::Zero(d)) = exact_mass(ed.window, volume);
  return ed;
}

EmpiricalDensity empirical_density_direct(const WeightSequence& a, const MultiIndex& n) {
  EmpiricalDensity ed{n, extract_window(a, n), FourierCoefficients::zeros(n)};
  const auto d = n.size();
  const double volume = box_volume(n);
  const auto strides = row_major_strides((n.array() + 1).matrix());
  auto at = [&](const MultiIndex& k) -> cplx {
    for (Eigen::Index j = 0; j < d; ++j)
      if (k[j] < 0 || k[j] > n[j]) return {};
    return ed.window[(k.array() * strides.array()).sum()];
  };
  const Eigen::Index half = ed.fourier.values().size() / 2;
  for_each_in_box((-n).eval(), n, [&](const MultiIndex& m) {
    const auto idx = ed.fourier.linear_index(m);
    if (idx < half) return;  // filled from the conjugate
    CompensatedSum<cplx> acc;
    for_each_in_box(MultiIndex::Zero(d), n, [&](const MultiIndex& k) {
      const cplx wk = ed.window[(k.array() * strides.array()).sum()];
      if (wk != cplx{}) acc.add(std::conj(wk) * at((k + m).eval()));
    });
    ed.fourier.values()[idx] = acc.value() / volume;
    ed.fourier.ref((-m).eval()) = std::conj(ed.fourier.values()[idx]);
  });
  ed.fourier.ref(MultiIndex::Zero(d)) = exact_mass(ed.window, volume);
  return ed;
}

double EmpiricalDensity::operator()(const TorusPoint& z) const {
  require_dim(dim(), z.dim(), "EmpiricalDensity");
  const TorusPoint zbar = z.conjugate();
  CompensatedSum<cplx> acc;
  Eigen::Index i = 0;
  for_each_in_box(MultiIndex::Zero(n.size()), n, [&](const MultiIndex& k) {
    const cplx w = window[i++];
    if (w != cplx{}) acc.add(w * zbar.power(k));
  });
  return std::norm(acc.value()) / box_volume(n);
}

double EmpiricalDensity::from_coefficients(const TorusPoint& z) const {
  require_dim(dim(), z.dim(), "EmpiricalDensity");
  const TorusPoint zbar = z.conjugate();
  CompensatedSum<cplx> acc;
  for_each_in_box((-n).eval(), n, [&](const MultiIndex& m) { acc.add(fourier.at(m) * zbar.power(m)); });
  return acc.value().real();
}

TorusMeasure EmpiricalDensity::as_measure() const {
  FourierCoefficients fhat = FourierCoefficients::zeros(n);
  for_each_in_box((-n).eval(), n, [&](const MultiIndex& k) { fhat.ref(k) = fourier.at((-k).eval()); });
  // tolerance-level negativity from rounding is accepted by the measure's own check
  return TorusMeasure(dim(), {}, std::move(fhat));
}

// ---------------------------------------------------------------------------
// point masses and continuity

PointMass point_mass(const FourierCoefficients& coeffs, const TorusPoint& z, const MultiIndex& h) {
  require_dim(coeffs.dim(), z.dim(), "point_mass");
  require_same_dim(coeffs.halfwidth(), h, "point_mass halfwidth");
  if (!all_nonnegative(h) || !componentwise_le(h, coeffs.halfwidth()))
    throw Error(ErrorKind::out_of_range, "point_mass: halfwidth " + to_string(h) + " exceeds coefficient box " +
                                             to_string(coeffs.halfwidth()));
  const TorusPoint zbar = z.conjugate();
  CompensatedSum<cplx> acc;
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& k) { acc.add(zbar.power(k) * coeffs.at(k)); });
  const cplx v = acc.value() / symmetric_box_volume(h);
  return {v.real(), v.imag()};
}

PointMass point_mass(const EmpiricalDensity& density, const TorusPoint& z) {
  return point_mass(density.fourier, z, density.n);
}

double wiener_continuity(const FourierCoefficients& coeffs, const MultiIndex& h) {
  require_same_dim(coeffs.halfwidth(), h, "wiener_continuity");
  if (!all_nonnegative(h) || !componentwise_le(h, coeffs.halfwidth()))
    throw Error(ErrorKind::out_of_range, "wiener_continuity: halfwidth exceeds coefficient box");
  CompensatedSum<double> acc;
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& k) { acc.add(std::norm(coeffs.at(k))); });
  return acc.value() / symmetric_box_volume(h);
}

WienerLadder wiener_ladder(const FourierCoefficients& coeffs, const std::vector<MultiIndex>& halfwidths,
                           double tolerance) {
  validate_ladder(halfwidths, coeffs.dim());
  WienerLadder out{halfwidths, Eigen::VectorXd(static_cast<Eigen::Index>(halfwidths.size())), tolerance, false};
  for (std::size_t r = 0; r < halfwidths.size(); ++r)
    out.values[static_cast<Eigen::Index>(r)] = wiener_continuity(coeffs, halfwidths[r]);
  out.empirically_continuous = out.values[out.values.size() - 1] < tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// affinity

AffinityResult affinity(const TorusMeasure& P, const TorusMeasure& Q, const AffinityOptions& options) {
  if (P.dim() != Q.dim()) throw Error(ErrorKind::dimension_mismatch, "affinity: dimension mismatch");
  AffinityResult result;
  CompensatedSum<double> atomic;
  for (const auto& p : P.atoms())
    for (const auto& q : Q.atoms())
      if (p.point.approx_equal(q.point, options.torus_tol)) {
        atomic.add(std::sqrt(p.mass * q.mass));
        break;
      }
  result.atomic_part = atomic.value();

  if (P.density() && Q.density()) {
    const int d = P.dim();
    std::int64_t degree = 0;
    for (int j = 0; j < d; ++j)
      degree = std::max({degree, P.density()->halfwidth()[j], Q.density()->halfwidth()[j]});
    std::int64_t res = std::max<std::int64_t>(options.initial_resolution, 2 * degree + 2);
    double previous = -1.0;
    result.converged = false;
    while (true) {
      const MultiIndex grid = MultiIndex::Constant(d, res);
      const Eigen::VectorXd f = evaluate_on_grid(*P.density(), grid, +1).real();
      const Eigen::VectorXd g = evaluate_on_grid(*Q.density(), grid, +1).real();
      CompensatedSum<double> acc;
      for (Eigen::Index i = 0; i < f.size(); ++i)
        if (f[i] > 0.0 && g[i] > 0.0) acc.add(std::sqrt(f[i] * g[i]));
      const double value = acc.value() / static_cast<double>(f.size());
      result.continuous_part = value;
      result.resolution = res;
      if (previous >= 0.0 && std::abs(value - previous) <= options.relative_tolerance * std::max(value, 1e-300)) {
        result.converged = true;
        break;
      }
      if (value == 0.0 && previous == 0.0) {
        result.converged = true;
        break;
      }
      previous = value;
      if (static_cast<double>(res * 2) > std::pow(static_cast<double>(options.max_points), 1.0 / d)) break;
      res *= 2;
    }
  }
  result.value = result.atomic_part + result.continuous_part;
  return result;
}

AffinitySequenceReport affinity_sequences(const WeightSequence& a, const WeightSequence& b,
                                          const std::vector<MultiIndex>& ladder,
                                          const std::optional<TorusMeasure>& sigma_a,
                                          const std::optional<TorusMeasure>& sigma_b, double tolerance,
                                          const AffinityOptions& options) {
  require_same_dim(a.extent(), b.extent(), "affinity_sequences");
  validate_ladder(ladder, a.dim());
  AffinitySequenceReport report{ladder, Eigen::VectorXd(static_cast<Eigen::Index>(ladder.size())), std::nullopt,
                                tolerance, false};
  const MultiIndex zero = MultiIndex::Zero(a.dim());
  for (std::size_t r = 0; r < ladder.size(); ++r)
    report.values[static_cast<Eigen::Index>(r)] =
        std::abs(shifted_conj_sum(b, a, zero, zero, ladder[r])) / box_volume(ladder[r]);
  if (sigma_a && sigma_b) {
    report.bound = affinity(*sigma_a, *sigma_b, options).value;
    report.violation = report.values[report.values.size() - 1] > *report.bound + tolerance;
  }
  return report;
}

PointBoundReport ww_pointbound(const WeightSequence& a, const TorusPoint& z, const std::vector<MultiIndex>& ladder,
                               const MultiIndex& spectral_halfwidth, double tolerance) {
  require_dim(a.dim(), z.dim(), "ww_pointbound");
  validate_ladder(ladder, a.dim());
  const auto rungs = static_cast<Eigen::Index>(ladder.size());
  PointBoundReport report{z, ladder, spectral_halfwidth, Eigen::VectorXd(rungs), Eigen::VectorXd(rungs),
                          Eigen::VectorXd(rungs), tolerance, false};
  for (Eigen::Index r = 0; r < rungs; ++r) {
    const auto& n = ladder[static_cast<std::size_t>(r)];
    report.amplitude[r] = std::abs(amplitude_estimate(a, z, n));
    const auto table = correlation_table(a, spectral_halfwidth, {n}, std::numeric_limits<double>::infinity());
    report.point_mass[r] = point_mass(table.entries, z, spectral_halfwidth).mass;
    report.bound[r] = std::sqrt(std::max(report.point_mass[r], 0.0));
  }
  report.violation = report.amplitude[rungs - 1] > report.bound[rungs - 1] + tolerance;
  return report;
}

// ---------------------------------------------------------------------------
// weak convergence

cplx TorusPolynomial::operator()(const TorusPoint& z) const {
  cplx s{};
  for (const auto& [m, c] : terms) s += c * z.power(m);
  return s;
}

cplx integrate(const TorusPolynomial& f, const EmpiricalDensity& density) {
  CompensatedSum<cplx> acc;
  for (const auto& [m, c] : f.terms) {
    if (!density.fourier.contains(m))
      throw Error(ErrorKind::out_of_range, "integrate: test function frequency " + to_string(m) +
                                               " exceeds coefficient box " + to_string(density.n));
    acc.add(c * density.fourier.at(m));
  }
  return acc.value();
}

cplx integrate(const TorusPolynomial& f, const TorusMeasure& mu) {
  CompensatedSum<cplx> acc;
  for (const auto& [m, c] : f.terms) acc.add(c * fourier_stieltjes(mu, m));
  return acc.value();
}

WeakConvergenceReport weak_convergence_check(const WeightSequence& a, const TorusMeasure& target,
                                             const std::vector<TorusPolynomial>& test_functions,
                                             const std::vector<MultiIndex>& ladder) {
  require_dim(a.dim(), target.dim(), "weak_convergence_check");
  validate_ladder(ladder, a.dim());
  const auto nf = static_cast<Eigen::Index>(test_functions.size());
  const auto rungs = static_cast<Eigen::Index>(ladder.size());
  WeakConvergenceReport report{ladder, Eigen::MatrixXcd(nf, rungs), Eigen::VectorXcd(nf), Eigen::VectorXd::Zero(nf), 0.0};
  for (Eigen::Index f = 0; f < nf; ++f) report.target[f] = integrate(test_functions[static_cast<std::size_t>(f)], target);
  for (Eigen::Index r = 0; r < rungs; ++r) {
    const auto ed = empirical_density(a, ladder[static_cast<std::size_t>(r)]);
    for (Eigen::Index f = 0; f < nf; ++f) report.pairings(f, r) = integrate(test_functions[static_cast<std::size_t>(f)], ed);
  }
  for (Eigen::Index f = 0; f < nf; ++f) report.top_discrepancy[f] = std::abs(report.pairings(f, rungs - 1) - report.target[f]);
  report.max_discrepancy = nf ? report.top_discrepancy.maxCoeff() : 0.0;
  return report;
}

}  // namespace wwlab
