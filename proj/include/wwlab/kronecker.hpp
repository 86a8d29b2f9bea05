#pragma once

#include "wwlab/ncsystem.hpp"

namespace wwlab {

/// Joint eigen-decomposition of x -> U_j x U_j^* on operator space with <x, y> = tau(x^* y).
/// Superoperators are matrices in tau_coordinates.
struct KroneckerDecomposition {
  /// Unitary V with V^* U_j V diagonal for every j.
  Eigen::MatrixXcd basis;
  /// lambda(j, p): eigenvalue of U_j on column p of basis.
  Eigen::MatrixXcd unitary_eigenvalues;
  /// B_{pq} = sqrt(N) v_p v_q^*, orthonormal for the tau inner product; index p * N + q.
  std::vector<Operator> eigen_operators;
  /// mu(j, p * N + q) = lambda(j, p) conj(lambda(j, q)), so that T_j(B_pq) = mu_j B_pq.
  Eigen::MatrixXcd eigenvalues;
  Eigen::MatrixXcd kronecker_projector;
  Eigen::MatrixXcd complement_projector;
  double max_eigen_residual = 0.0;
  double unimodular_tol = 0.0;
};

KroneckerDecomposition kronecker_decomposition(const MatrixSystem& sys, double cluster_tol = 1e-8,
                                               double unimodular_tol = 1e-9);

/// Superoperator T_j as an N^2 x N^2 matrix in tau_coordinates.
Eigen::MatrixXcd superoperator(const MatrixSystem& sys, int j);

/// Projection of x onto the joint fixed space {y : T_j(y) = y for all j}; the limit of
/// ergodic averages.
Operator fixed_point_projection(const MatrixSystem& sys, const Operator& x, double tol = 1e-9);
Operator fixed_point_projection(const KroneckerDecomposition& dec, const Operator& x, double tol = 1e-9);

struct ProjectorDefects {
  double idempotence = 0.0;
  double self_adjointness = 0.0;
  double resolution_of_identity = 0.0;
  double complement_norm = 0.0;
};
ProjectorDefects projector_defects(const KroneckerDecomposition& dec);

/// Distinct joint eigenvalues mu (columns) with multiplicities, in order of first appearance.
struct EigenvalueLattice {
  Eigen::MatrixXcd values;
  std::vector<int> multiplicity;
};
EigenvalueLattice eigenvalue_lattice(const KroneckerDecomposition& dec, double tol = 1e-9);

}  // namespace wwlab
