#pragma once

#include "wwlab/core.hpp"

namespace wwlab {

using Operator = Eigen::MatrixXcd;

/// Normalized trace tau(x) = (1/N) sum_i x_ii.
cplx tau(const Operator& x);
/// ||x||_2 = tau(x* x)^{1/2}.
double l2_norm(const Operator& x);
/// Largest singular value. Jacobi SVD up to N = 64, power iteration on x* x above.
double operator_norm(const Operator& x);
double operator_norm_power(const Operator& x, int max_iterations = 10000, double tol = 1e-14);

Operator matrix_unit(Eigen::Index N, Eigen::Index i, Eigen::Index j);

bool is_unitary(const Operator& u, double tol);

/// Orthogonal projection p = p* = p^2 in M_N.
class Projection {
 public:
  Projection() = default;
  explicit Projection(Operator p, double tol = 1e-10);
  static Projection identity(Eigen::Index N);
  /// Projection onto the span of the given orthonormal columns.
  static Projection onto(const Eigen::MatrixXcd& orthonormal_columns);

  const Operator& matrix() const { return p_; }
  Eigen::Index size() const { return p_.rows(); }
  /// tau(1 - p)
  double complement_trace() const;

 private:
  Operator p_;
};

/// Column-major vec of x scaled by N^{-1/2}: the tau inner product becomes the standard one.
Eigen::VectorXcd tau_coordinates(const Operator& x);
Operator from_tau_coordinates(const Eigen::VectorXcd& v, Eigen::Index N);

}  // namespace wwlab
