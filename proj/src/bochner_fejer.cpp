#include "wwlab/bochner_fejer.hpp"

namespace wwlab {

namespace {

MultiIndex order_box(const BochnerFejerAxis& axis) {
  MultiIndex h(static_cast<Eigen::Index>(axis.orders.size()));
  for (std::size_t i = 0; i < axis.orders.size(); ++i) h[static_cast<Eigen::Index>(i)] = axis.orders[i];
  return h;
}

}  // namespace

BochnerFejerSpec::BochnerFejerSpec(std::vector<BochnerFejerAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error(ErrorKind::invalid_argument, "BochnerFejerSpec: need at least one axis");
  for (const auto& ax : axes_) {
    if (ax.orders.empty() || ax.orders.size() != ax.bases.size())
      throw Error(ErrorKind::invalid_argument, "BochnerFejerSpec: orders and bases must be non-empty and equal length");
    for (int n : ax.orders)
      if (n < 1) throw Error(ErrorKind::invalid_argument, "BochnerFejerSpec: orders must be >= 1");
    for (double b : ax.bases)
      if (!std::isfinite(b)) throw Error(ErrorKind::invalid_argument, "BochnerFejerSpec: non-finite base");
  }
}

double BochnerFejerSpec::weight(int axis, const MultiIndex& nu) const {
  const auto& ax = axes_.at(static_cast<std::size_t>(axis));
  double w = 1.0;
  for (std::size_t i = 0; i < ax.orders.size(); ++i) {
    const double r = 1.0 - static_cast<double>(std::abs(nu[static_cast<Eigen::Index>(i)])) / ax.orders[i];
    w *= std::max(r, 0.0);
  }
  return w;
}

double BochnerFejerSpec::frequency(int axis, const MultiIndex& nu) const {
  const auto& ax = axes_.at(static_cast<std::size_t>(axis));
  long double acc = 0.0L;
  for (std::size_t i = 0; i < ax.bases.size(); ++i) acc += fractional_product(ax.bases[i], nu[static_cast<Eigen::Index>(i)]);
  return static_cast<double>(acc - std::floor(acc));
}

cplx bochner_fejer_kernel_eval(const BochnerFejerSpec& spec, const MultiIndex& t) {
  if (t.size() != spec.dim()) throw Error(ErrorKind::dimension_mismatch, "bochner_fejer_kernel_eval: dimension");
  cplx total{1.0, 0.0};
  for (int j = 0; j < spec.dim(); ++j) {
    const auto& ax = spec.axis(j);
    // the kernel factors over the bases into one-dimensional Fejer sums
    cplx axis_value{1.0, 0.0};
    for (std::size_t i = 0; i < ax.orders.size(); ++i) {
      const int n = ax.orders[i];
      cplx s{};
      for (int nu = -n; nu <= n; ++nu)
        s += (1.0 - std::abs(nu) / static_cast<double>(n)) * unit_root(fractional_product(ax.bases[i], static_cast<std::int64_t>(nu) * t[j]));
      axis_value *= s;
    }
    total *= axis_value;
  }
  return total;
}

cplx bochner_fejer_kernel_direct(const BochnerFejerSpec& spec, const MultiIndex& t) {
  if (t.size() != spec.dim()) throw Error(ErrorKind::dimension_mismatch, "bochner_fejer_kernel_direct: dimension");
  cplx total{1.0, 0.0};
  for (int j = 0; j < spec.dim(); ++j) {
    const MultiIndex h = order_box(spec.axis(j));
    cplx s{};
    for_each_in_box((-h).eval(), h, [&](const MultiIndex& nu) {
      s += spec.weight(j, nu) * unit_root(fractional_product(spec.frequency(j, nu), t[j]));
    });
    total *= s;
  }
  return total;
}

TrigPolynomial bochner_fejer_convolve(const BochnerFejerSpec& spec, const WeightSequence& a, const MultiIndex& n,
                                      double torus_tol) {
  if (spec.dim() != a.dim()) throw Error(ErrorKind::dimension_mismatch, "bochner_fejer_convolve: dimension");
  const int d = spec.dim();

  // per-axis lattice of (angle, weight), dropping zero weights
  std::vector<std::vector<std::pair<double, double>>> axis_terms(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const MultiIndex h = order_box(spec.axis(j));
    for_each_in_box((-h).eval(), h, [&](const MultiIndex& nu) {
      const double w = spec.weight(j, nu);
      if (w > 0.0) axis_terms[static_cast<std::size_t>(j)].emplace_back(spec.frequency(j, nu), w);
    });
  }

  struct Pending {
    TorusPoint z;
    double weight;
  };
  std::vector<Pending> merged;
  MultiIndex counts(d), zero = MultiIndex::Zero(d);
  for (int j = 0; j < d; ++j) counts[j] = static_cast<std::int64_t>(axis_terms[static_cast<std::size_t>(j)].size()) - 1;
  for_each_in_box(zero, counts, [&](const MultiIndex& pick) {
    Eigen::VectorXd angles(d);
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
      const auto& term = axis_terms[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick[j])];
      angles[j] = term.first;
      w *= term.second;
    }
    TorusPoint z(angles);
    for (auto& p : merged)
      if (p.z.approx_equal(z, torus_tol)) {
        p.weight += w;
        return;
      }
    merged.push_back({std::move(z), w});
  });

  std::vector<TrigTerm> terms;
  terms.reserve(merged.size());
  for (const auto& p : merged) {
    const cplx c = p.weight * amplitude_estimate(a, p.z, n);
    if (c != cplx{}) terms.push_back({p.z, c});
  }
  return TrigPolynomial(d, std::move(terms), torus_tol);
}

}  // namespace wwlab
