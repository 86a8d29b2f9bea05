#include "wwlab/linalg.hpp"

namespace wwlab {

cplx tau(const Operator& x) {
  if (x.rows() != x.cols() || x.rows() == 0) throw Error(ErrorKind::dimension_mismatch, "tau: square non-empty matrix required");
  return x.trace() / static_cast<double>(x.rows());
}

double l2_norm(const Operator& x) { return std::sqrt(x.squaredNorm() / static_cast<double>(x.rows())); }

double operator_norm_power(const Operator& x, int max_iterations, double tol) {
  if (x.size() == 0) return 0.0;
  const Operator g = x.adjoint() * x;
  Eigen::VectorXcd v(x.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(1.0 + 0.01 * static_cast<double>(i), 0.001 * static_cast<double>(i % 7));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXcd w = g * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= tol * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

double operator_norm(const Operator& x) {
  if (x.size() == 0) return 0.0;
  if (x.rows() > 64 || x.cols() > 64) return operator_norm_power(x);
  Eigen::JacobiSVD<Operator> svd(x);
  return svd.singularValues()[0];
}

Operator matrix_unit(Eigen::Index N, Eigen::Index i, Eigen::Index j) {
  Operator e = Operator::Zero(N, N);
  e(i, j) = 1.0;
  return e;
}

bool is_unitary(const Operator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return operator_norm(u * u.adjoint() - Operator::Identity(u.rows(), u.cols())) <= tol;
}

Projection::Projection(Operator p, double tol) : p_(std::move(p)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) throw Error(ErrorKind::dimension_mismatch, "Projection: square matrix required");
  const double scale = std::max(1.0, operator_norm(p_));
  if (operator_norm(p_ - p_.adjoint()) > tol * scale || operator_norm(p_ * p_ - p_) > tol * scale)
    throw Error(ErrorKind::invalid_argument, "Projection: matrix is not a self-adjoint idempotent");
}

Projection Projection::identity(Eigen::Index N) { return Projection(Operator::Identity(N, N)); }

Projection Projection::onto(const Eigen::MatrixXcd& q) { return Projection(q * q.adjoint()); }

double Projection::complement_trace() const { return 1.0 - tau(p_).real(); }

Eigen::VectorXcd tau_coordinates(const Operator& x) {
  return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size()) / std::sqrt(static_cast<double>(x.rows()));
}

Operator from_tau_coordinates(const Eigen::VectorXcd& v, Eigen::Index N) {
  if (v.size() != N * N) throw Error(ErrorKind::dimension_mismatch, "from_tau_coordinates: length must be N^2");
  return Eigen::Map<const Operator>(v.data(), N, N) * std::sqrt(static_cast<double>(N));
}

}  // namespace wwlab
