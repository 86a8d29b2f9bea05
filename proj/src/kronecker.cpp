#include "wwlab/kronecker.hpp"

#include <Eigen/Eigenvalues>

namespace wwlab {

namespace {

struct Block {
  Eigen::Index start, size;
};

/// Rotate each block of V to diagonalize the Hermitian h restricted to it, then split the
/// block wherever consecutive eigenvalues differ by more than tol.
std::vector<Block> refine(Eigen::MatrixXcd& V, const Eigen::MatrixXcd& h, const std::vector<Block>& blocks, double tol) {
  std::vector<Block> out;
  for (const auto& b : blocks) {
    if (b.size == 1) {
      out.push_back(b);
      continue;
    }
    const Eigen::MatrixXcd vb = V.middleCols(b.start, b.size);
    Eigen::MatrixXcd restricted = vb.adjoint() * h * vb;
    restricted = 0.5 * (restricted + restricted.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(restricted);
    V.middleCols(b.start, b.size) = vb * es.eigenvectors();
    const auto& ev = es.eigenvalues();
    Eigen::Index run = 0;
    for (Eigen::Index i = 1; i <= b.size; ++i)
      if (i == b.size || ev[i] - ev[i - 1] > tol) {
        out.push_back({b.start + run, i - run});
        run = i;
      }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd superoperator(const MatrixSystem& sys, int j) {
  const Eigen::Index N = sys.size();
  Eigen::MatrixXcd S(N * N, N * N);
  for (Eigen::Index c = 0; c < N * N; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(N * N);
    e[c] = 1.0;
    S.col(c) = tau_coordinates(sys.step(j, from_tau_coordinates(e, N)));
  }
  return S;
}

KroneckerDecomposition kronecker_decomposition(const MatrixSystem& sys, double cluster_tol, double unimodular_tol) {
  const Eigen::Index N = sys.size();
  const int d = sys.dim();
  KroneckerDecomposition dec;
  dec.unimodular_tol = unimodular_tol;

  Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(N, N);
  std::vector<Block> blocks{{0, N}};
  const cplx i_unit(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    const Operator& u = sys.unitary(j);
    blocks = refine(V, 0.5 * (u + u.adjoint()), blocks, cluster_tol);
    blocks = refine(V, (u - u.adjoint()) / (2.0 * i_unit), blocks, cluster_tol);
  }
  dec.basis = V;
  dec.unitary_eigenvalues.resize(d, N);
  for (int j = 0; j < d; ++j) {
    const Eigen::MatrixXcd diag = V.adjoint() * sys.unitary(j) * V;
    for (Eigen::Index p = 0; p < N; ++p) dec.unitary_eigenvalues(j, p) = diag(p, p);
    const double off = (diag - Eigen::MatrixXcd(diag.diagonal().asDiagonal())).norm();
    if (off > std::max(1e3 * cluster_tol, sys.tolerance()) * static_cast<double>(N))
      throw Error(ErrorKind::invariant_violation, "kronecker_decomposition: unitaries are not simultaneously diagonalizable");
  }

  const double root_n = std::sqrt(static_cast<double>(N));
  dec.eigenvalues.resize(d, N * N);
  Eigen::MatrixXcd coords(N * N, N * N);
  for (Eigen::Index p = 0; p < N; ++p)
    for (Eigen::Index q = 0; q < N; ++q) {
      const Eigen::Index c = p * N + q;
      Operator b = root_n * V.col(p) * V.col(q).adjoint();
      for (int j = 0; j < d; ++j) {
        const cplx mu = dec.unitary_eigenvalues(j, p) * std::conj(dec.unitary_eigenvalues(j, q));
        dec.eigenvalues(j, c) = mu;
        dec.max_eigen_residual = std::max(dec.max_eigen_residual, operator_norm(sys.step(j, b) - mu * b));
      }
      coords.col(c) = tau_coordinates(b);
      dec.eigen_operators.push_back(std::move(b));
    }

  Eigen::MatrixXcd kept = Eigen::MatrixXcd::Zero(N * N, N * N);
  Eigen::Index count = 0;
  for (Eigen::Index c = 0; c < N * N; ++c) {
    bool unimodular = true;
    for (int j = 0; j < d; ++j) unimodular = unimodular && std::abs(std::abs(dec.eigenvalues(j, c)) - 1.0) <= unimodular_tol;
    if (unimodular) kept.col(count++) = coords.col(c);
  }
  dec.kronecker_projector = kept.leftCols(count) * kept.leftCols(count).adjoint();
  dec.complement_projector = Eigen::MatrixXcd::Identity(N * N, N * N) - dec.kronecker_projector;
  return dec;
}

Operator fixed_point_projection(const KroneckerDecomposition& dec, const Operator& x, double tol) {
  const Eigen::Index N = dec.basis.rows();
  if (x.rows() != N || x.cols() != N) throw Error(ErrorKind::dimension_mismatch, "fixed_point_projection: operator size");
  Operator out = Operator::Zero(N, N);
  for (std::size_t c = 0; c < dec.eigen_operators.size(); ++c) {
    bool fixed = true;
    for (Eigen::Index j = 0; j < dec.eigenvalues.rows(); ++j)
      fixed = fixed && std::abs(dec.eigenvalues(j, static_cast<Eigen::Index>(c)) - 1.0) <= tol;
    if (!fixed) continue;
    const Operator& b = dec.eigen_operators[c];
    out += tau(b.adjoint() * x) * b;
  }
  return out;
}

Operator fixed_point_projection(const MatrixSystem& sys, const Operator& x, double tol) {
  return fixed_point_projection(kronecker_decomposition(sys), x, tol);
}

ProjectorDefects projector_defects(const KroneckerDecomposition& dec) {
  const auto& P = dec.kronecker_projector;
  const auto& Q = dec.complement_projector;
  const Eigen::Index M = P.rows();
  ProjectorDefects out;
  out.idempotence = std::max(operator_norm(P * P - P), operator_norm(Q * Q - Q));
  out.self_adjointness = std::max(operator_norm(P - P.adjoint()), operator_norm(Q - Q.adjoint()));
  out.resolution_of_identity = operator_norm(P + Q - Eigen::MatrixXcd::Identity(M, M));
  out.complement_norm = operator_norm(Q);
  return out;
}

EigenvalueLattice eigenvalue_lattice(const KroneckerDecomposition& dec, double tol) {
  EigenvalueLattice out;
  const Eigen::Index d = dec.eigenvalues.rows();
  std::vector<Eigen::VectorXcd> seen;
  for (Eigen::Index c = 0; c < dec.eigenvalues.cols(); ++c) {
    const Eigen::VectorXcd mu = dec.eigenvalues.col(c);
    bool found = false;
    for (std::size_t s = 0; s < seen.size() && !found; ++s)
      if ((seen[s] - mu).cwiseAbs().maxCoeff() <= tol) {
        ++out.multiplicity[s];
        found = true;
      }
    if (!found) {
      seen.push_back(mu);
      out.multiplicity.push_back(1);
    }
  }
  out.values.resize(d, static_cast<Eigen::Index>(seen.size()));
  for (std::size_t s = 0; s < seen.size(); ++s) out.values.col(static_cast<Eigen::Index>(s)) = seen[s];
  return out;
}

}  // namespace wwlab
