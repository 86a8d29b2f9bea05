#include "wwlab/weights.hpp"

#include "wwlab/fft.hpp"

#include <algorithm>

namespace wwlab {

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(int d, std::vector<TrigTerm> terms, double torus_tol)
    : d_(d), terms_(std::move(terms)) {
  if (d_ < 1) throw Error(ErrorKind::invalid_argument, "TrigPolynomial: dimension must be >= 1");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].frequency.dim() != d_)
      throw Error(ErrorKind::dimension_mismatch, "TrigPolynomial: frequency dimension");
    for (std::size_t j = 0; j < i; ++j)
      if (terms_[i].frequency.approx_equal(terms_[j].frequency, torus_tol))
        throw Error(ErrorKind::invalid_argument, "TrigPolynomial: repeated frequency");
  }
}

cplx TrigPolynomial::operator()(const MultiIndex& k) const {
  cplx sum{};
  for (const auto& t : terms_) sum += t.coefficient * t.frequency.power(k);
  return sum;
}

cplx TrigPolynomial::correlation(const MultiIndex& m) const {
  cplx sum{};
  for (const auto& t : terms_) sum += std::norm(t.coefficient) * t.frequency.power(m);
  return sum;
}

double TrigPolynomial::min_frequency_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) gap = std::min(gap, terms_[i].frequency.distance(terms_[j].frequency));
  return gap;
}

// ---------------------------------------------------------------------------
// Example59

cplx Example59::operator()(const MultiIndex& k) const {
  if (k.size() != d) throw Error(ErrorKind::dimension_mismatch, "example59: dimension");
  if (!all_nonnegative(k)) return 0.0;
  const double s = static_cast<double>(k.sum()) + 1.0;
  const double lg = log_base == std::numbers::e ? std::log(s) : std::log(s) / std::log(log_base);
  const auto band = static_cast<std::int64_t>(std::floor(lg));
  return (band % 2 == 0) ? 1.0 : -1.0;
}

Generator example59(int d, double log_base) {
  if (d < 1) throw Error(ErrorKind::invalid_argument, "example59: dimension must be >= 1");
  if (!(log_base > 1.0)) throw Error(ErrorKind::invalid_argument, "example59: log base must exceed 1");
  return Example59{d, log_base};
}

// ---------------------------------------------------------------------------
// WeightSequence

WeightSequence::WeightSequence(MultiIndex lower, MultiIndex extent, Eigen::VectorXcd values, Generator generator)
    : lower_(std::move(lower)), extent_(std::move(extent)), values_(std::move(values)), generator_(std::move(generator)) {
  if (extent_.size() < 1) throw Error(ErrorKind::invalid_argument, "WeightSequence: dimension must be >= 1");
  require_same_dim(lower_, extent_, "WeightSequence lower/extent");
  if (!all_nonnegative(extent_)) throw Error(ErrorKind::invalid_argument, "WeightSequence: negative extent");
  strides_ = row_major_strides((extent_.array() + 1).matrix());
  if (static_cast<double>(values_.size()) != box_volume(extent_))
    throw Error(ErrorKind::dimension_mismatch, "WeightSequence: value count " + std::to_string(values_.size()) +
                                                   " does not match box " + to_string(extent_));
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
      throw Error(ErrorKind::invalid_argument, "WeightSequence: non-finite value");
}

WeightSequence WeightSequence::from_values(MultiIndex extent, Eigen::VectorXcd values) {
  MultiIndex lower = MultiIndex::Zero(extent.size());
  return WeightSequence(std::move(lower), std::move(extent), std::move(values), std::monostate{});
}

WeightSequence WeightSequence::from_values(MultiIndex lower, MultiIndex extent, Eigen::VectorXcd values) {
  return WeightSequence(std::move(lower), std::move(extent), std::move(values), std::monostate{});
}

WeightSequence WeightSequence::from_function(MultiIndex lower, MultiIndex extent,
                                             const std::function<cplx(const MultiIndex&)>& f) {
  Eigen::VectorXcd values(static_cast<Eigen::Index>(box_volume(extent)));
  Eigen::Index i = 0;
  for_each_in_box(lower, (lower + extent).eval(), [&](const MultiIndex& k) { values[i++] = f(k); });
  return WeightSequence(std::move(lower), std::move(extent), std::move(values), std::monostate{});
}

WeightSequence WeightSequence::from_generator(Generator generator, MultiIndex extent) {
  MultiIndex lower = MultiIndex::Zero(extent.size());
  const int d = static_cast<int>(extent.size());
  std::function<cplx(const MultiIndex&)> f;
  if (auto* p = std::get_if<TrigPolynomial>(&generator)) {
    if (p->dim() != d) throw Error(ErrorKind::dimension_mismatch, "from_generator: trig polynomial dimension");
    f = [p](const MultiIndex& k) { return (*p)(k); };
  } else if (auto* e = std::get_if<Example59>(&generator)) {
    if (e->d != d) throw Error(ErrorKind::dimension_mismatch, "from_generator: example59 dimension");
    f = [e](const MultiIndex& k) { return (*e)(k); };
  } else {
    throw Error(ErrorKind::invalid_argument, "from_generator: empty generator");
  }
  auto seq = from_function(lower, extent, f);
  seq.generator_ = std::move(generator);
  return seq;
}

WeightSequence WeightSequence::constant(cplx value, MultiIndex extent) {
  const auto count = static_cast<Eigen::Index>(box_volume(extent));
  return from_values(std::move(extent), Eigen::VectorXcd::Constant(count, value));
}

bool WeightSequence::contains(const MultiIndex& k) const {
  if (k.size() != extent_.size()) throw Error(ErrorKind::dimension_mismatch, "WeightSequence: index dimension");
  for (Eigen::Index j = 0; j < k.size(); ++j)
    if (k[j] < lower_[j] || k[j] > lower_[j] + extent_[j]) return false;
  return true;
}

std::int64_t WeightSequence::offset(const MultiIndex& k) const {
  std::int64_t off = 0;
  for (Eigen::Index j = 0; j < k.size(); ++j) off += (k[j] - lower_[j]) * strides_[j];
  return off;
}

cplx WeightSequence::operator()(const MultiIndex& k) const { return contains(k) ? values_[offset(k)] : cplx{}; }

double WeightSequence::sup_norm() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

// ---------------------------------------------------------------------------
// lattice sums

namespace {

// above this many multiply-adds a correlation table switches to the FFT block
constexpr double kDirectCorrelationWork = 4.0e6;

struct Range {
  MultiIndex lo, hi;
  bool empty() const { return ((hi - lo).array() < 0).any(); }
};

Range clip(const MultiIndex& lo, const MultiIndex& hi, const WeightSequence& s, const MultiIndex& shift) {
  // k with k + shift inside s's box
  Range r{lo, hi};
  for (Eigen::Index j = 0; j < lo.size(); ++j) {
    r.lo[j] = std::max(r.lo[j], s.lower()[j] - shift[j]);
    r.hi[j] = std::min(r.hi[j], s.lower()[j] + s.extent()[j] - shift[j]);
  }
  return r;
}

/// Row-wise traversal: calls row(k_row_start, length) for each contiguous run along the last axis.
template <class F>
void for_each_row(const Range& r, F&& row) {
  const Eigen::Index d = r.lo.size();
  const std::int64_t len = r.hi[d - 1] - r.lo[d - 1] + 1;
  MultiIndex outer_lo = r.lo.head(d - 1), outer_hi = r.hi.head(d - 1);
  MultiIndex k = r.lo;
  for_each_in_box(outer_lo, outer_hi, [&](const MultiIndex& outer) {
    k.head(d - 1) = outer;
    row(static_cast<const MultiIndex&>(k), len);
  });
}

}  // namespace

cplx shifted_conj_sum(const WeightSequence& a, const WeightSequence& b, const MultiIndex& shift,
                      const MultiIndex& lo, const MultiIndex& hi) {
  require_same_dim(a.extent(), b.extent(), "shifted_conj_sum");
  require_same_dim(a.extent(), shift, "shifted_conj_sum shift");
  require_same_dim(lo, hi, "shifted_conj_sum range");
  require_same_dim(a.extent(), lo, "shifted_conj_sum range");
  Range r = clip(lo, hi, a, MultiIndex::Zero(lo.size()));
  r = clip(r.lo, r.hi, b, shift);
  if (r.empty()) return {};
  CompensatedSum<cplx> acc;
  const cplx* av = a.values().data();
  const cplx* bv = b.values().data();
  for_each_row(r, [&](const MultiIndex& k, std::int64_t len) {
    const cplx* pa = av + a.offset(k);
    const cplx* pb = bv + b.offset((k + shift).eval());
    for (std::int64_t i = 0; i < len; ++i) acc.add(std::conj(pa[i]) * pb[i]);
  });
  return acc.value();
}

cplx correlation_estimate(const WeightSequence& a, const MultiIndex& m, const MultiIndex& n) {
  require_same_dim(a.extent(), m, "correlation_estimate m");
  require_same_dim(a.extent(), n, "correlation_estimate n");
  if (!all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, "correlation_estimate: n must be >= 0");
  return shifted_conj_sum(a, a, m, (-n).eval(), n) / box_volume(n);
}

void validate_ladder(const std::vector<MultiIndex>& ladder, int d) {
  if (ladder.empty()) throw Error(ErrorKind::invalid_argument, "ladder must not be empty");
  for (std::size_t r = 0; r < ladder.size(); ++r) {
    if (ladder[r].size() != d) throw Error(ErrorKind::dimension_mismatch, "ladder rung dimension");
    if (!all_nonnegative(ladder[r])) throw Error(ErrorKind::invalid_argument, "ladder rungs must be >= 0");
    if (r > 0 && !(ladder[r].array() > ladder[r - 1].array()).all())
      throw Error(ErrorKind::invalid_argument, "ladder must be strictly increasing componentwise");
  }
}

std::vector<MultiIndex> geometric_ladder(const MultiIndex& top, int rungs, double ratio) {
  if (rungs < 1 || !(ratio > 1.0)) throw Error(ErrorKind::invalid_argument, "geometric_ladder: bad parameters");
  std::vector<MultiIndex> ladder;
  for (int r = rungs - 1; r >= 0; --r) {
    const double scale = std::pow(ratio, r);
    MultiIndex rung(top.size());
    for (Eigen::Index j = 0; j < top.size(); ++j)
      rung[j] = static_cast<std::int64_t>(std::floor(static_cast<double>(top[j]) / scale));
    if (!ladder.empty() && !(rung.array() > ladder.back().array()).all()) continue;
    if (!all_nonnegative(rung)) continue;
    ladder.push_back(rung);
  }
  validate_ladder(ladder, static_cast<int>(top.size()));
  return ladder;
}

double CorrelationTable::max_hermitian_defect() const {
  double worst = 0.0;
  for_each_in_box((-halfwidth).eval(), halfwidth, [&](const MultiIndex& m) {
    worst = std::max(worst, std::abs(entries.at((-m).eval()) - std::conj(entries.at(m))));
  });
  return worst;
}

FourierCoefficients correlation_block(const WeightSequence& a, const MultiIndex& n, const MultiIndex& h) {
  require_same_dim(a.extent(), n, "correlation_block");
  require_same_dim(a.extent(), h, "correlation_block halfwidth");
  if (!all_nonnegative(n) || !all_nonnegative(h))
    throw Error(ErrorKind::invalid_argument, "correlation_block: n and h must be >= 0");
  const auto d = n.size();
  FourierCoefficients out = FourierCoefficients::zeros(h);
  // u(k) = a(k) on [-n, n], v(j) = a(j) on [-n-h, n+h], each clipped to the box and stored from its low corner
  const Range ru = clip((-n).eval(), n, a, MultiIndex::Zero(d));
  const Range rv = clip((-n - h).eval(), (n + h).eval(), a, MultiIndex::Zero(d));
  if (ru.empty() || rv.empty()) return out;
  MultiIndex size(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const std::int64_t span = (ru.hi[j] - ru.lo[j] + 1) + (rv.hi[j] - rv.lo[j] + 1) - 1;
    size[j] = 1;
    while (size[j] < span) size[j] <<= 1;
  }
  const auto strides = row_major_strides(size);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(size.prod()), v = Eigen::VectorXcd::Zero(size.prod());
  auto place = [&](Eigen::VectorXcd& buf, const Range& r) {
    for_each_row(r, [&](const MultiIndex& k, std::int64_t len) {
      const cplx* src = a.values().data() + a.offset(k);
      const std::int64_t at = ((k - r.lo).array() * strides.array()).sum();
      for (std::int64_t i = 0; i < len; ++i) buf[at + i] = src[i];
    });
  };
  place(u, ru);
  place(v, rv);
  dft_nd(u, size, true);
  dft_nd(v, size, true);
  Eigen::VectorXcd r = u.conjugate().cwiseProduct(v);
  dft_nd(r, size, false);
  const double scale = 1.0 / (static_cast<double>(size.prod()) * box_volume(n));
  // lag m sits at m + ru.lo - rv.lo
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& m) {
    std::int64_t idx = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const std::int64_t s = m[j] + ru.lo[j] - rv.lo[j];
      idx += ((s % size[j] + size[j]) % size[j]) * strides[j];
    }
    out.ref(m) = r[idx] * scale;
  });
  return out;
}

CorrelationTable correlation_table(const WeightSequence& a, const MultiIndex& halfwidth,
                                   const std::vector<MultiIndex>& ladder, double tolerance) {
  require_same_dim(a.extent(), halfwidth, "correlation_table halfwidth");
  validate_ladder(ladder, a.dim());
  if (!all_nonnegative(halfwidth)) throw Error(ErrorKind::invalid_argument, "correlation_table: halfwidth < 0");

  CorrelationTable table;
  table.halfwidth = halfwidth;
  table.ladder = ladder;
  table.tolerance = tolerance;
  table.entries = FourierCoefficients::zeros(halfwidth);
  const auto count = table.entries.values().size();
  const auto rungs = static_cast<Eigen::Index>(ladder.size());
  table.diagnostics.resize(count, rungs);
  table.ladder_spread.setZero(count);

  for (Eigen::Index r = 0; r < rungs; ++r) {
    const auto& n = ladder[static_cast<std::size_t>(r)];
    if (static_cast<double>(count) * box_volume(n) > kDirectCorrelationWork) {
      table.diagnostics.col(r) = correlation_block(a, n, halfwidth).values();
    } else {
      for_each_in_box((-halfwidth).eval(), halfwidth, [&](const MultiIndex& m) {
        table.diagnostics(table.entries.linear_index(m), r) = correlation_estimate(a, m, n);
      });
    }
  }
  for_each_in_box((-halfwidth).eval(), halfwidth, [&](const MultiIndex& m) {
    const auto row = table.entries.linear_index(m);
    table.entries.values()[row] = table.diagnostics(row, rungs - 1);
    if (rungs > 1) table.ladder_spread[row] = std::abs(table.diagnostics(row, rungs - 1) - table.diagnostics(row, rungs - 2));
  });
  table.appears_in_S = count == 0 || table.ladder_spread.maxCoeff() < tolerance;
  return table;
}

double marcinkiewicz_seminorm(const WeightSequence& A, double p, const MultiIndex& n) {
  require_same_dim(A.extent(), n, "marcinkiewicz_seminorm");
  if (std::isnan(p) || p < 1.0) throw Error(ErrorKind::invalid_argument, "marcinkiewicz_seminorm: p must be >= 1");
  if (std::isinf(p)) return A.sup_norm();
  if (!all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, "marcinkiewicz_seminorm: n must be >= 0");
  Range r = clip((-n).eval(), n, A, MultiIndex::Zero(n.size()));
  CompensatedSum<double> acc;
  if (!r.empty()) {
    const cplx* v = A.values().data();
    for_each_row(r, [&](const MultiIndex& k, std::int64_t len) {
      const cplx* row = v + A.offset(k);
      for (std::int64_t i = 0; i < len; ++i) acc.add(p == 1.0 ? std::abs(row[i]) : std::pow(std::abs(row[i]), p));
    });
  }
  return std::pow(acc.value() / box_volume(n), 1.0 / p);
}

cplx semi_inner_product(const WeightSequence& A, const WeightSequence& B, const MultiIndex& n) {
  require_same_dim(A.extent(), B.extent(), "semi_inner_product");
  require_same_dim(A.extent(), n, "semi_inner_product n");
  if (!all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, "semi_inner_product: n must be >= 0");
  return shifted_conj_sum(A, B, MultiIndex::Zero(n.size()), (-n).eval(), n) / box_volume(n);
}

WeightSequence translate(const WeightSequence& A, const MultiIndex& m) {
  require_same_dim(A.extent(), m, "translate");
  if (m.isZero()) return A;
  // the support box moves with the shift, so generator metadata no longer describes it
  return WeightSequence::from_values((A.lower() - m).eval(), A.extent(), A.values());
}

cplx amplitude_estimate(const WeightSequence& a, const TorusPoint& z, const MultiIndex& n) {
  require_same_dim(a.extent(), n, "amplitude_estimate");
  if (z.dim() != a.dim()) throw Error(ErrorKind::dimension_mismatch, "amplitude_estimate: torus point dimension");
  if (!all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, "amplitude_estimate: n must be >= 0");
  Range r = clip(MultiIndex::Zero(n.size()), n, a, MultiIndex::Zero(n.size()));
  if (r.empty()) return {};
  const TorusPoint zbar = z.conjugate();
  CompensatedSum<cplx> acc;
  const cplx* v = a.values().data();
  for_each_row(r, [&](const MultiIndex& k, std::int64_t len) {
    const cplx* row = v + a.offset(k);
    MultiIndex kk = k;
    const auto last = kk.size() - 1;
    for (std::int64_t i = 0; i < len; ++i) {
      kk[last] = k[last] + i;
      if (row[i] != cplx{}) acc.add(row[i] * zbar.power(kk));
    }
  });
  return acc.value() / box_volume(n);
}

Eigen::VectorXcd amplitude_ladder(const WeightSequence& a, const TorusPoint& z, const std::vector<MultiIndex>& ladder) {
  validate_ladder(ladder, a.dim());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(ladder.size()));
  for (std::size_t r = 0; r < ladder.size(); ++r) out[static_cast<Eigen::Index>(r)] = amplitude_estimate(a, z, ladder[r]);
  return out;
}

}  // namespace wwlab
