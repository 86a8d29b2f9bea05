#include "wwlab/torus.hpp"

#include <numbers>

namespace wwlab {

namespace {

double reduce(long double x) {
  long double r = x - std::floor(x);
  if (r >= 1.0L) r -= 1.0L;
  return static_cast<double>(r);
}

}  // namespace

cplx unit_root(double frac) {
  const double r = reduce(frac);
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.25) return {0.0, 1.0};
  if (r == 0.5) return {-1.0, 0.0};
  if (r == 0.75) return {0.0, -1.0};
  const double phase = 2.0 * std::numbers::pi * r;
  return {std::cos(phase), std::sin(phase)};
}

double fractional_product(double theta, std::int64_t k) {
  return reduce(static_cast<long double>(theta) * static_cast<long double>(k));
}

TorusPoint::TorusPoint(Eigen::VectorXd angles) : angles_(std::move(angles)) {
  if (angles_.size() < 1) throw Error(ErrorKind::invalid_argument, "TorusPoint: dimension must be >= 1");
  for (Eigen::Index j = 0; j < angles_.size(); ++j) {
    if (!std::isfinite(angles_[j])) throw Error(ErrorKind::invalid_argument, "TorusPoint: non-finite angle");
    angles_[j] = reduce(angles_[j]);
  }
}

TorusPoint TorusPoint::identity(int d) { return TorusPoint(Eigen::VectorXd::Zero(d)); }

TorusPoint TorusPoint::from_angles(std::initializer_list<double> angles) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(angles.size()));
  Eigen::Index j = 0;
  for (double a : angles) v[j++] = a;
  return TorusPoint(std::move(v));
}

cplx TorusPoint::power(const MultiIndex& k) const {
  if (k.size() != angles_.size())
    throw Error(ErrorKind::dimension_mismatch, "TorusPoint::power: dimension mismatch");
  long double acc = 0.0L;
  for (Eigen::Index j = 0; j < k.size(); ++j) acc += fractional_product(angles_[j], k[j]);
  return unit_root(reduce(acc));
}

TorusPoint TorusPoint::conjugate() const { return TorusPoint(-angles_); }

TorusPoint TorusPoint::operator*(const TorusPoint& other) const {
  if (other.dim() != dim()) throw Error(ErrorKind::dimension_mismatch, "TorusPoint product: dimension mismatch");
  return TorusPoint(angles_ + other.angles_);
}

double circular_distance(double a, double b) {
  double diff = std::abs(reduce(static_cast<long double>(a) - b));
  return std::min(diff, 1.0 - diff);
}

double TorusPoint::distance(const TorusPoint& other) const {
  if (other.dim() != dim()) throw Error(ErrorKind::dimension_mismatch, "TorusPoint distance: dimension mismatch");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < angles_.size(); ++j)
    worst = std::max(worst, circular_distance(angles_[j], other.angles_[j]));
  return worst;
}

}  // namespace wwlab
