#include "wwlab/vandercorput.hpp"

#include "wwlab/kronecker.hpp"

#include <algorithm>

namespace wwlab {

namespace {

double magnitude(const cplx& v) { return std::abs(v); }
double magnitude(const Operator& v) { return operator_norm(v); }

cplx zero_like(const cplx&) { return {}; }
Operator zero_like(const Operator& v) { return Operator::Zero(v.rows(), v.cols()); }

template <class T>
double relative_deviation(const T& lhs, const T& rhs, double input_scale) {
  const double scale = std::max({magnitude(lhs), magnitude(rhs), input_scale});
  return scale == 0.0 ? 0.0 : magnitude(T(lhs - rhs)) / scale;
}

}  // namespace

template <class T>
IdentityCheck<T> formula1_check(const std::vector<T>& values, std::int64_t h) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 1) throw Error(ErrorKind::invalid_argument, "formula1_check: need n >= 1");
  if (h < 0) throw Error(ErrorKind::invalid_argument, "formula1_check: need h >= 0");
  auto a = [&](std::int64_t j) { return (j >= 1 && j <= n) ? values[static_cast<std::size_t>(j - 1)] : zero_like(values[0]); };

  T lhs = zero_like(values[0]);
  double input_scale = 0.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    lhs = lhs + a(j);
    input_scale += magnitude(a(j));
  }
  lhs = lhs * static_cast<double>(h + 1);
  T rhs = zero_like(values[0]);
  for (std::int64_t k = 1; k <= n + h; ++k)
    for (std::int64_t j = k - h; j <= k; ++j) rhs = rhs + a(j);
  IdentityCheck<T> out{lhs, rhs, 0.0, h > n};
  out.deviation = relative_deviation(out.lhs, out.rhs, (h + 1) * input_scale);
  return out;
}

template <class T>
IdentityCheck<T> formula2_check(const std::vector<std::vector<T>>& array, std::int64_t h) {
  const auto n = static_cast<std::int64_t>(array.size());
  if (n < 1 || array[0].empty()) throw Error(ErrorKind::invalid_argument, "formula2_check: need n >= 1");
  if (h < 0) throw Error(ErrorKind::invalid_argument, "formula2_check: need h >= 0");
  for (const auto& row : array)
    if (static_cast<std::int64_t>(row.size()) != n) throw Error(ErrorKind::dimension_mismatch, "formula2_check: array must be square");
  const T zero = zero_like(array[0][0]);
  auto a = [&](std::int64_t j, std::int64_t jp) -> T {
    if (j < 1 || jp < 1 || j > n || jp > n) return zero;
    return array[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(jp - 1)];
  };

  T lhs = zero;
  for (std::int64_t k = 1; k <= n + h; ++k)
    for (std::int64_t j = k - h; j <= k; ++j)
      for (std::int64_t jp = k - h; jp <= k; ++jp) lhs = lhs + a(j, jp);

  T diag = zero;
  double input_scale = 0.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    diag = diag + a(j, j);
    for (std::int64_t jp = 1; jp <= n; ++jp) input_scale += magnitude(a(j, jp));
  }
  T rhs = diag * static_cast<double>(h + 1);
  for (std::int64_t d = 1; d <= h; ++d) {
    T off = zero;
    for (std::int64_t j = 1; j <= n; ++j) off = off + a(j, j + d) + a(j + d, j);
    rhs = rhs + off * static_cast<double>(h - d + 1);
  }
  IdentityCheck<T> out{lhs, rhs, 0.0, h > n};
  out.deviation = relative_deviation(out.lhs, out.rhs, (h + 1) * input_scale);
  return out;
}

template IdentityCheck<cplx> formula1_check(const std::vector<cplx>&, std::int64_t);
template IdentityCheck<Operator> formula1_check(const std::vector<Operator>&, std::int64_t);
template IdentityCheck<cplx> formula2_check(const std::vector<std::vector<cplx>>&, std::int64_t);
template IdentityCheck<Operator> formula2_check(const std::vector<std::vector<Operator>>&, std::int64_t);

// ---------------------------------------------------------------------------

OperatorArray2D::OperatorArray2D(Eigen::Index N, std::int64_t n1, std::int64_t n2)
    : OperatorArray2D(N, n1, n2, n1, n2) {}

OperatorArray2D::OperatorArray2D(Eigen::Index N, std::int64_t n1, std::int64_t n2, std::int64_t s1, std::int64_t s2)
    : N_(N), n1_(n1), n2_(n2), s1_(s1), s2_(s2), zero_(Operator::Zero(N, N)) {
  if (N < 1 || n1 < 1 || n2 < 1) throw Error(ErrorKind::invalid_argument, "OperatorArray2D: need N, n1, n2 >= 1");
  if (s1 < n1 || s2 < n2) throw Error(ErrorKind::invalid_argument, "OperatorArray2D: storage must cover the averaging range");
  entries_.assign(static_cast<std::size_t>(s1 * s2), zero_);
}

OperatorArray2D OperatorArray2D::constant(const Operator& value, std::int64_t n1, std::int64_t n2, std::int64_t s1,
                                          std::int64_t s2) {
  OperatorArray2D out(value.rows(), n1, n2, s1, s2);
  std::fill(out.entries_.begin(), out.entries_.end(), value);
  return out;
}

OperatorArray2D OperatorArray2D::random(Rng& rng, Eigen::Index N, std::int64_t n1, std::int64_t n2, std::int64_t s1,
                                        std::int64_t s2) {
  OperatorArray2D out(N, n1, n2, s1, s2);
  const cplx shift = rng.complex_normal();
  for (auto& e : out.entries_) e = rng.gaussian_matrix(N, N) + shift * Operator::Identity(N, N);
  return out;
}

const Operator& OperatorArray2D::operator()(std::int64_t j1, std::int64_t j2) const {
  if (j1 < 1 || j2 < 1 || j1 > s1_ || j2 > s2_) return zero_;
  return entries_[static_cast<std::size_t>((j1 - 1) * s2_ + (j2 - 1))];
}

Operator& OperatorArray2D::at(std::int64_t j1, std::int64_t j2) {
  if (j1 < 1 || j2 < 1 || j1 > s1_ || j2 > s2_)
    throw Error(ErrorKind::out_of_range, "OperatorArray2D::at: index outside storage");
  return entries_[static_cast<std::size_t>((j1 - 1) * s2_ + (j2 - 1))];
}

OperatorArray2D OperatorArray2D::padded() const {
  OperatorArray2D out(N_, n1_, n2_);
  for (std::int64_t j1 = 1; j1 <= n1_; ++j1)
    for (std::int64_t j2 = 1; j2 <= n2_; ++j2) out.at(j1, j2) = (*this)(j1, j2);
  return out;
}

VdcShiftTable vdc_shift_table(const OperatorArray2D& a, std::int64_t h1, std::int64_t h2) {
  if (h1 < 0 || h2 < 0) throw Error(ErrorKind::invalid_argument, "vdc_shift_table: need h >= 0");
  const std::int64_t n1 = a.n1(), n2 = a.n2();
  const double scale = 1.0 / static_cast<double>(n1 * n2);
  const Eigen::Index N = a.op_size();
  auto average = [&](std::int64_t l1, std::int64_t l2, std::int64_t r1, std::int64_t r2) {
    // (1/n1 n2) sum_j a*_{j + l} a_{j + r}
    Operator acc = Operator::Zero(N, N);
    for (std::int64_t j1 = 1; j1 <= n1; ++j1)
      for (std::int64_t j2 = 1; j2 <= n2; ++j2) {
        const Operator& right = a(j1 + r1, j2 + r2);
        if (right.isZero(0.0)) continue;
        acc.noalias() += a(j1 + l1, j2 + l2).adjoint() * right;
      }
    return Operator(acc * scale);
  };

  VdcShiftTable t;
  t.h1 = h1;
  t.h2 = h2;
  Operator sum = Operator::Zero(N, N);
  for (std::int64_t j1 = 1; j1 <= n1; ++j1)
    for (std::int64_t j2 = 1; j2 <= n2; ++j2) sum += a(j1, j2);
  const double norm = operator_norm(sum * scale);
  t.lhs = norm * norm;
  t.diagonal = operator_norm(average(0, 0, 0, 0));
  for (std::int64_t d1 = 1; d1 <= h1; ++d1) t.shift1.push_back(operator_norm(average(0, 0, d1, 0)));
  for (std::int64_t d2 = 1; d2 <= h2; ++d2) t.shift2.push_back(operator_norm(average(0, 0, 0, d2)));
  t.joint.assign(static_cast<std::size_t>(h1), std::vector<double>(static_cast<std::size_t>(h2)));
  t.mixed = t.joint;
  for (std::int64_t d1 = 1; d1 <= h1; ++d1)
    for (std::int64_t d2 = 1; d2 <= h2; ++d2) {
      t.joint[static_cast<std::size_t>(d1 - 1)][static_cast<std::size_t>(d2 - 1)] = operator_norm(average(0, 0, d1, d2));
      t.mixed[static_cast<std::size_t>(d1 - 1)][static_cast<std::size_t>(d2 - 1)] = operator_norm(average(d1, 0, 0, d2));
    }
  return t;
}

VdcBound vdc_bound(const VdcShiftTable& t, std::int64_t n1, std::int64_t n2, std::int64_t h1, std::int64_t h2) {
  if (h1 < 0 || h2 < 0) throw Error(ErrorKind::invalid_argument, "vdc_bound: need h >= 0");
  if (h1 > t.h1 || h2 > t.h2) throw Error(ErrorKind::out_of_range, "vdc_bound: shift table too small");
  VdcBound b;
  b.lhs = t.lhs;
  b.H = static_cast<double>((h1 + 1) * (h2 + 1));
  b.outside_hypothesis = h1 > n1 || h2 > n2;
  const double w = 8.0 / b.H;
  CompensatedSum<double> s1, s2, jt, mx;
  for (std::int64_t d1 = 1; d1 <= h1; ++d1) s1.add(t.shift1[static_cast<std::size_t>(d1 - 1)]);
  for (std::int64_t d2 = 1; d2 <= h2; ++d2) s2.add(t.shift2[static_cast<std::size_t>(d2 - 1)]);
  for (std::int64_t d1 = 1; d1 <= h1; ++d1)
    for (std::int64_t d2 = 1; d2 <= h2; ++d2) {
      jt.add(t.joint[static_cast<std::size_t>(d1 - 1)][static_cast<std::size_t>(d2 - 1)]);
      mx.add(t.mixed[static_cast<std::size_t>(d1 - 1)][static_cast<std::size_t>(d2 - 1)]);
    }
  b.diagonal_group = 4.0 / b.H * t.diagonal;
  b.shift1_group = w * s1.value();
  b.shift2_group = w * s2.value();
  b.joint_group = w * jt.value();
  b.mixed_group = w * mx.value();
  b.rhs = b.diagonal_group + b.shift1_group + b.shift2_group + b.joint_group + b.mixed_group;
  return b;
}

VdcBound vdc_bound(const OperatorArray2D& array, std::int64_t h1, std::int64_t h2) {
  return vdc_bound(vdc_shift_table(array, h1, h2), array.n1(), array.n2(), h1, h2);
}

VdcFuzzReport vdc_fuzz(const VdcFuzzConfig& config) {
  if (config.trials < 0 || config.max_dim < 1 || config.max_n1 < 1 || config.max_n2 < 1)
    throw Error(ErrorKind::invalid_argument, "vdc_fuzz: trials >= 0, max_dim >= 1, max_n >= 1 required");
  if (config.h_policy != "admissible" && config.h_policy != "beyond")
    throw Error(ErrorKind::invalid_argument, "vdc_fuzz: h_policy must be admissible or beyond");
  const std::int64_t extra = config.h_policy == "beyond" ? 2 : 0;
  VdcFuzzReport report;
  report.config = config;
  report.min_slack = std::numeric_limits<double>::infinity();

  if (config.include_zero_trial) {
    const OperatorArray2D zero(1, 4, 4, 5, 5);
    const VdcBound b = vdc_bound(zero, 1, 1);
    report.zero_lhs = b.lhs;
    report.zero_rhs = b.rhs;
  }

  Rng rng(config.seed);
  auto record = [&](const VdcCase& c) {
    ++report.checks;
    const double slack = c.rhs + config.tolerance - c.lhs;
    report.min_slack = std::min(report.min_slack, c.rhs - c.lhs);
    if (c.rhs > 0.0) report.max_ratio = std::max(report.max_ratio, c.lhs / c.rhs);
    if (c.outside_hypothesis) {
      ++report.outside_hypothesis;
      if (report.flagged.size() < 20) report.flagged.push_back(c);
    }
    if (slack < 0.0 && c.outside_hypothesis) {
      ++report.outside_violations;
    } else if (slack < 0.0) {
      ++report.violations;
      if (report.violating.size() < 20) report.violating.push_back(c);
    }
  };
  for (int trial = 0; trial < config.trials; ++trial) {
    const auto N = static_cast<Eigen::Index>(rng.integer(1, config.max_dim));
    const std::int64_t n1 = rng.integer(1, config.max_n1), n2 = rng.integer(1, config.max_n2);
    const std::int64_t hmax1 = n1 + extra, hmax2 = n2 + extra;
    const OperatorArray2D extended = OperatorArray2D::random(rng, N, n1, n2, n1 + hmax1, n2 + hmax2);
    const OperatorArray2D padded = extended.padded();
    const VdcShiftTable te = vdc_shift_table(extended, hmax1, hmax2);
    const VdcShiftTable tp = vdc_shift_table(padded, hmax1, hmax2);
    for (std::int64_t h1 = 0; h1 <= hmax1; ++h1)
      for (std::int64_t h2 = 0; h2 <= hmax2; ++h2)
        for (bool pad : {false, true}) {
          const VdcBound b = vdc_bound(pad ? tp : te, n1, n2, h1, h2);
          record({trial, N, n1, n2, h1, h2, pad, b.lhs, b.rhs, b.outside_hypothesis});
        }
  }
  if (report.checks == 0) report.min_slack = 0.0;
  return report;
}

WwProofReport vdc_apply_wwproof(const MatrixSystem& sys, const Operator& x, const Projection& e, const MultiIndex& n,
                                const MultiIndex& h, const MultiIndex& grid, double tolerance) {
  if (sys.dim() != 2) throw Error(ErrorKind::dimension_mismatch, "vdc_apply_wwproof: system must have d = 2");
  if (n.size() != 2 || h.size() != 2 || grid.size() != 2)
    throw Error(ErrorKind::dimension_mismatch, "vdc_apply_wwproof: n, h and grid must be 2-dimensional");
  if (!all_nonnegative(n) || !all_nonnegative(h)) throw Error(ErrorKind::invalid_argument, "vdc_apply_wwproof: n, h >= 0 required");
  if (x.rows() != sys.size() || x.cols() != sys.size() || e.size() != sys.size())
    throw Error(ErrorKind::dimension_mismatch, "vdc_apply_wwproof: operator size differs from the system");

  WwProofReport r;
  r.n1 = n[0] + 1;
  r.n2 = n[1] + 1;
  r.h1 = h[0];
  r.h2 = h[1];
  r.outside_hypothesis = r.h1 > r.n1 || r.h2 > r.n2;

  const UniformSup sup = uniform_ww_sup(sys, x, e, n, grid);
  r.grid_sup_squared = sup.value * sup.value;
  r.argmax = sup.argmax;

  // a_{j} = T^{j-1}(x) e for 1 <= j <= n + 1 + h (lambda only multiplies shifted products by a unimodular constant)
  const Eigen::Index N = sys.size();
  OperatorArray2D array(N, r.n1, r.n2, r.n1 + r.h1, r.n2 + r.h2);
  {
    Operator row = x;
    for (std::int64_t j1 = 1; j1 <= array.s1(); ++j1) {
      Operator y = row;
      for (std::int64_t j2 = 1; j2 <= array.s2(); ++j2) {
        array.at(j1, j2) = y * e.matrix();
        y = sys.step(1, y);
      }
      row = sys.step(0, row);
    }
  }
  r.extended = vdc_bound(array, r.h1, r.h2);
  r.padded = vdc_bound(array.padded(), r.h1, r.h2);

  const double H = static_cast<double>((r.h1 + 1) * (r.h2 + 1));
  CompensatedSum<double> abs_sum, sq_sum;
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& l) {
    const double g = std::abs(operator_correlation(sys, x, l));
    abs_sum.add(g);
    sq_sum.add(g * g);
  });
  r.limit_bound = 4.0 / H * l2_norm(x) * l2_norm(x) + 8.0 / H * abs_sum.value();
  r.correlation_average = abs_sum.value() / H;
  r.wiener_average = sq_sum.value() / symmetric_box_volume(h);
  r.violation = r.grid_sup_squared > r.extended.rhs + tolerance;
  return r;
}

}  // namespace wwlab
