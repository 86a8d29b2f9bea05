#include "wwlab/coefficients.hpp"

namespace wwlab {

FourierCoefficients::FourierCoefficients(MultiIndex halfwidth, Eigen::VectorXcd values)
    : halfwidth_(std::move(halfwidth)), values_(std::move(values)) {
  if (halfwidth_.size() < 1 || !all_nonnegative(halfwidth_))
    throw Error(ErrorKind::invalid_argument, "FourierCoefficients: halfwidth must be non-negative");
  if (static_cast<double>(values_.size()) != symmetric_box_volume(halfwidth_))
    throw Error(ErrorKind::dimension_mismatch, "FourierCoefficients: value count does not match box");
}

FourierCoefficients FourierCoefficients::zeros(const MultiIndex& halfwidth) {
  return FourierCoefficients(halfwidth,
                             Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(symmetric_box_volume(halfwidth))));
}

bool FourierCoefficients::contains(const MultiIndex& m) const {
  if (m.size() != halfwidth_.size()) throw Error(ErrorKind::dimension_mismatch, "FourierCoefficients: dimension");
  return (m.array().abs() <= halfwidth_.array()).all();
}

Eigen::Index FourierCoefficients::linear_index(const MultiIndex& m) const {
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < m.size(); ++j) idx = idx * (2 * halfwidth_[j] + 1) + (m[j] + halfwidth_[j]);
  return idx;
}

cplx FourierCoefficients::at(const MultiIndex& m) const {
  return contains(m) ? values_[linear_index(m)] : cplx{};
}

cplx& FourierCoefficients::ref(const MultiIndex& m) {
  if (!contains(m)) throw Error(ErrorKind::out_of_range, "FourierCoefficients: index " + to_string(m) + " outside box");
  return values_[linear_index(m)];
}

}  // namespace wwlab
