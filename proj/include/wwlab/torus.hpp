#pragma once

#include "wwlab/core.hpp"

namespace wwlab {

inline constexpr double kDefaultTorusTolerance = 1e-9;

/// e^{2 pi i frac}. Quarter turns come out exact (1, i, -1, -i).
cplx unit_root(double frac);

/// frac(theta * k) computed in extended precision.
double fractional_product(double theta, std::int64_t k);

/// Point of T^d stored as angle fractions in [0, 1); coordinate j is e^{2 pi i angle_j}.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(Eigen::VectorXd angles);
  static TorusPoint identity(int d);
  static TorusPoint from_angles(std::initializer_list<double> angles);

  int dim() const { return static_cast<int>(angles_.size()); }
  double angle(int j) const { return angles_[j]; }
  const Eigen::VectorXd& angles() const { return angles_; }
  cplx coordinate(int j) const { return unit_root(angles_[j]); }

  /// z^k = prod_j z_j^{k_j}.
  cplx power(const MultiIndex& k) const;
  TorusPoint conjugate() const;
  TorusPoint operator*(const TorusPoint& other) const;

  /// Largest per-axis circular distance between angle fractions.
  double distance(const TorusPoint& other) const;
  bool approx_equal(const TorusPoint& other, double tol = kDefaultTorusTolerance) const {
    return distance(other) <= tol;
  }

 private:
  Eigen::VectorXd angles_;
};

/// Circular distance between two angle fractions, in [0, 1/2].
double circular_distance(double a, double b);

}  // namespace wwlab
