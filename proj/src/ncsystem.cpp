#include "wwlab/ncsystem.hpp"

#include "wwlab/fft.hpp"

namespace wwlab {

MatrixSystem::MatrixSystem(std::vector<Operator> unitaries, double tol) : unitaries_(std::move(unitaries)), tol_(tol) {
  if (unitaries_.empty()) throw Error(ErrorKind::invalid_argument, "MatrixSystem: need at least one unitary");
  N_ = unitaries_.front().rows();
  if (N_ == 0) throw Error(ErrorKind::invalid_argument, "MatrixSystem: empty matrices");
  for (const auto& u : unitaries_) {
    if (u.rows() != N_ || u.cols() != N_) throw Error(ErrorKind::dimension_mismatch, "MatrixSystem: unitaries must be N x N");
    if (!u.allFinite()) throw Error(ErrorKind::invalid_argument, "MatrixSystem: non-finite entries");
    if (!is_unitary(u, tol_)) throw Error(ErrorKind::invalid_argument, "MatrixSystem: matrix is not unitary within tolerance");
  }
  for (std::size_t i = 0; i < unitaries_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (operator_norm(unitaries_[i] * unitaries_[j] - unitaries_[j] * unitaries_[i]) > tol_)
        throw Error(ErrorKind::invalid_argument, "MatrixSystem: unitaries do not commute within tolerance");
}

MatrixSystem MatrixSystem::identity(Eigen::Index N, int d) {
  return MatrixSystem(std::vector<Operator>(static_cast<std::size_t>(d), Operator::Identity(N, N)));
}

Operator MatrixSystem::unitary_power(const MultiIndex& k) const {
  if (k.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "unitary_power: index dimension");
  Operator out = Operator::Identity(N_, N_);
  for (int j = 0; j < dim(); ++j) {
    Operator base = k[j] < 0 ? Operator(unitary(j).adjoint()) : unitary(j);
    for (std::int64_t e = std::abs(k[j]); e > 0; e >>= 1) {
      if (e & 1) out = out * base;
      if (e > 1) base = base * base;
    }
  }
  return out;
}

Operator MatrixSystem::step(int j, const Operator& x, bool inverse) const {
  const Operator& u = unitary(j);
  return inverse ? Operator(u.adjoint() * x * u) : Operator(u * x * u.adjoint());
}

namespace {

void require_operator(const MatrixSystem& sys, const Operator& x, const char* what) {
  if (x.rows() != sys.size() || x.cols() != sys.size())
    throw Error(ErrorKind::dimension_mismatch, std::string(what) + ": operator size differs from the system");
}

void require_box(const MatrixSystem& sys, const MultiIndex& n, const char* what) {
  if (n.size() != sys.dim()) throw Error(ErrorKind::dimension_mismatch, std::string(what) + ": index dimension");
  if (!all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, std::string(what) + ": n must be >= 0");
}

/// Calls f(k, T^k x) for k in [0, n], row-major, one automorphism step per visit.
template <class F>
void for_each_orbit(const MatrixSystem& sys, int j, Operator y, const MultiIndex& n, MultiIndex& k, F& f) {
  const int d = sys.dim();
  for (k[j] = 0; k[j] <= n[j]; ++k[j]) {
    if (j == d - 1)
      f(static_cast<const MultiIndex&>(k), static_cast<const Operator&>(y));
    else
      for_each_orbit(sys, j + 1, y, n, k, f);
    if (k[j] < n[j]) y = sys.step(j, y);
  }
}

template <class F>
void for_each_orbit(const MatrixSystem& sys, const Operator& x, const MultiIndex& n, F&& f) {
  MultiIndex k = MultiIndex::Zero(sys.dim());
  for_each_orbit(sys, 0, x, n, k, f);
}

std::vector<Operator> orbit_table(const MatrixSystem& sys, const Operator& x, const MultiIndex& n) {
  std::vector<Operator> table;
  table.reserve(static_cast<std::size_t>(box_volume(n)));
  for_each_orbit(sys, x, n, [&](const MultiIndex&, const Operator& y) { table.push_back(y); });
  return table;
}

/// Orbit folded modulo the grid, then transformed entry by entry.
std::vector<Operator> folded_orbit_dft(const MatrixSystem& sys, const Operator& x, const MultiIndex& n,
                                       const MultiIndex& grid, bool forward) {
  const Eigen::Index N = sys.size();
  const auto strides = row_major_strides(grid);
  const auto cells = static_cast<std::size_t>(grid.prod());
  std::vector<Operator> folded(cells, Operator::Zero(N, N));
  for_each_orbit(sys, x, n, [&](const MultiIndex& k, const Operator& y) {
    std::int64_t idx = 0;
    for (Eigen::Index j = 0; j < k.size(); ++j) idx += (k[j] % grid[j]) * strides[j];
    folded[static_cast<std::size_t>(idx)] += y;
  });
  Eigen::VectorXcd line(static_cast<Eigen::Index>(cells));
  for (Eigen::Index r = 0; r < N; ++r)
    for (Eigen::Index c = 0; c < N; ++c) {
      for (std::size_t i = 0; i < cells; ++i) line[static_cast<Eigen::Index>(i)] = folded[i](r, c);
      dft_nd(line, grid, forward);
      for (std::size_t i = 0; i < cells; ++i) folded[i](r, c) = line[static_cast<Eigen::Index>(i)];
    }
  return folded;
}

TorusPoint grid_point(std::int64_t idx, const MultiIndex& grid) {
  Eigen::VectorXd angles(grid.size());
  for (Eigen::Index j = grid.size() - 1; j >= 0; --j) {
    angles[j] = static_cast<double>(idx % grid[j]) / static_cast<double>(grid[j]);
    idx /= grid[j];
  }
  return TorusPoint(angles);
}

}  // namespace

Operator apply_power(const MatrixSystem& sys, const Operator& x, const MultiIndex& k) {
  require_operator(sys, x, "apply_power");
  if (k.isZero()) return x;
  const Operator u = sys.unitary_power(k);
  return u * x * u.adjoint();
}

Operator twisted_average(const MatrixSystem& sys, const Operator& x, const TorusPoint& lambda, const MultiIndex& n) {
  require_operator(sys, x, "twisted_average");
  require_box(sys, n, "twisted_average");
  if (lambda.dim() != sys.dim()) throw Error(ErrorKind::dimension_mismatch, "twisted_average: lambda dimension");
  // sum_k lambda^k T^k = prod_j (sum_{k_j} lambda_j^{k_j} T_j^{k_j}), the factors commute
  Operator y = x;
  for (int j = sys.dim() - 1; j >= 0; --j) {
    Operator acc = Operator::Zero(sys.size(), sys.size());
    Operator t = y;
    for (std::int64_t k = 0; k <= n[j]; ++k) {
      acc += unit_root(fractional_product(lambda.angle(j), k)) * t;
      if (k < n[j]) t = sys.step(j, t);
    }
    y = std::move(acc);
  }
  return y / box_volume(n);
}

Operator ergodic_average(const MatrixSystem& sys, const Operator& x, const MultiIndex& n) {
  return twisted_average(sys, x, TorusPoint::identity(sys.dim()), n);
}

Operator weighted_average(const MatrixSystem& sys, const Operator& x, const WeightSequence& a, const MultiIndex& n) {
  require_operator(sys, x, "weighted_average");
  require_box(sys, n, "weighted_average");
  if (a.dim() != sys.dim()) throw Error(ErrorKind::dimension_mismatch, "weighted_average: weight dimension");
  Operator acc = Operator::Zero(sys.size(), sys.size());
  for_each_orbit(sys, x, n, [&](const MultiIndex& k, const Operator& y) {
    const cplx w = a(k);
    if (w != cplx{}) acc += w * y;
  });
  return acc / box_volume(n);
}

cplx operator_correlation(const MatrixSystem& sys, const Operator& x, const MultiIndex& m) {
  require_operator(sys, x, "operator_correlation");
  return tau(apply_power(sys, x, m).adjoint() * x);
}

Operator operator_spectral_coeff(const MatrixSystem& sys, const Operator& x, const MultiIndex& m, const MultiIndex& n) {
  require_operator(sys, x, "operator_spectral_coeff");
  require_box(sys, n, "operator_spectral_coeff");
  if (m.size() != sys.dim()) throw Error(ErrorKind::dimension_mismatch, "operator_spectral_coeff: m dimension");
  const auto table = orbit_table(sys, x, n);
  const auto strides = row_major_strides((n.array() + 1).matrix());
  Operator acc = Operator::Zero(sys.size(), sys.size());
  MultiIndex lo(n.size()), hi(n.size());
  for (Eigen::Index j = 0; j < n.size(); ++j) {
    lo[j] = std::max<std::int64_t>(0, -m[j]);
    hi[j] = std::min(n[j], n[j] - m[j]);
  }
  for_each_in_box(lo, hi, [&](const MultiIndex& k) {
    const auto i = (k.array() * strides.array()).sum();
    const auto im = ((k + m).array() * strides.array()).sum();
    acc += table[static_cast<std::size_t>(im)].adjoint() * table[static_cast<std::size_t>(i)];
  });
  return acc / box_volume(n);
}

Operator operator_spectral_coeff_quadrature(const MatrixSystem& sys, const Operator& x, const MultiIndex& m,
                                            const MultiIndex& n) {
  require_operator(sys, x, "operator_spectral_coeff_quadrature");
  require_box(sys, n, "operator_spectral_coeff_quadrature");
  if (m.size() != sys.dim()) throw Error(ErrorKind::dimension_mismatch, "operator_spectral_coeff_quadrature: m dimension");
  const MultiIndex grid = (n.array() + m.array().abs() + 1).matrix();
  // X(z_l) = sum_k T^k(x) e^{2 pi i k.l / G}
  const auto X = folded_orbit_dft(sys, x, n, grid, false);
  Operator acc = Operator::Zero(sys.size(), sys.size());
  for (std::size_t idx = 0; idx < X.size(); ++idx) {
    const TorusPoint z = grid_point(static_cast<std::int64_t>(idx), grid);
    acc += z.power(m) * (X[idx].adjoint() * X[idx]);
  }
  return acc / (static_cast<double>(grid.prod()) * box_volume(n));
}

MatrixSystem random_commuting_system(Eigen::Index N, int d, Rng& rng) {
  if (N < 1 || d < 1) throw Error(ErrorKind::invalid_argument, "random_commuting_system: need N >= 1, d >= 1");
  const Operator v = rng.haar_unitary(N);
  std::vector<Operator> us;
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXcd phases(N);
    for (Eigen::Index p = 0; p < N; ++p) phases[p] = unit_root(rng.uniform());
    us.push_back(v * phases.asDiagonal() * v.adjoint());
  }
  return MatrixSystem(std::move(us));
}

std::vector<Operator> twisted_average_grid(const MatrixSystem& sys, const Operator& x, const MultiIndex& n,
                                           const MultiIndex& grid) {
  require_operator(sys, x, "twisted_average_grid");
  require_box(sys, n, "twisted_average_grid");
  if (grid.size() != sys.dim() || (grid.array() < 1).any())
    throw Error(ErrorKind::invalid_argument, "twisted_average_grid: grid resolution must be >= 1 per axis");
  auto out = folded_orbit_dft(sys, x, n, grid, false);
  const double vol = box_volume(n);
  for (auto& m : out) m /= vol;
  return out;
}

UniformSup uniform_ww_sup(const MatrixSystem& sys, const Operator& x, const Projection& e, const MultiIndex& n,
                          const MultiIndex& grid) {
  if (e.size() != sys.size()) throw Error(ErrorKind::dimension_mismatch, "uniform_ww_sup: projection size");
  const auto averages = twisted_average_grid(sys, x, n, grid);
  UniformSup best{-1.0, TorusPoint::identity(sys.dim())};
  for (std::size_t idx = 0; idx < averages.size(); ++idx) {
    const double v = operator_norm(averages[idx] * e.matrix());
    if (v > best.value) best = {v, grid_point(static_cast<std::int64_t>(idx), grid)};
  }
  return best;
}

UniformSup uniform_ww_sup_naive(const MatrixSystem& sys, const Operator& x, const Projection& e, const MultiIndex& n,
                                const MultiIndex& grid) {
  if (e.size() != sys.size()) throw Error(ErrorKind::dimension_mismatch, "uniform_ww_sup_naive: projection size");
  if (grid.size() != sys.dim() || (grid.array() < 1).any())
    throw Error(ErrorKind::invalid_argument, "uniform_ww_sup_naive: grid resolution must be >= 1 per axis");
  UniformSup best{-1.0, TorusPoint::identity(sys.dim())};
  for (std::int64_t idx = 0; idx < grid.prod(); ++idx) {
    const TorusPoint lambda = grid_point(idx, grid);
    const double v = operator_norm(twisted_average(sys, x, lambda, n) * e.matrix());
    if (v > best.value) best = {v, lambda};
  }
  return best;
}

}  // namespace wwlab
