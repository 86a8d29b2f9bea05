#pragma once

#include "wwlab/core.hpp"

namespace wwlab {

/// Complex values indexed by m in the symmetric box [-h, h]^d, stored row-major.
/// Holds moment-convention coefficients c(m) = integral of z^m against a measure.
class FourierCoefficients {
 public:
  FourierCoefficients() = default;
  FourierCoefficients(MultiIndex halfwidth, Eigen::VectorXcd values);
  static FourierCoefficients zeros(const MultiIndex& halfwidth);

  int dim() const { return static_cast<int>(halfwidth_.size()); }
  const MultiIndex& halfwidth() const { return halfwidth_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }

  bool contains(const MultiIndex& m) const;
  /// Zero outside the stored box.
  cplx at(const MultiIndex& m) const;
  cplx& ref(const MultiIndex& m);
  Eigen::Index linear_index(const MultiIndex& m) const;

 private:
  MultiIndex halfwidth_;
  Eigen::VectorXcd values_;
};

}  // namespace wwlab
