#include "wwlab/au_diagnostic.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace wwlab {

AuResult au_convergence_diagnostic(const std::vector<Operator>& tail, double epsilon, const AuStrategy& strategy) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::invalid_argument, "au_convergence_diagnostic: epsilon must lie in (0, 1)");
  if (tail.empty()) throw Error(ErrorKind::invalid_argument, "au_convergence_diagnostic: empty tail");
  if (!strategy.weights.empty() && strategy.weights.size() != tail.size())
    throw Error(ErrorKind::dimension_mismatch, "au_convergence_diagnostic: one weight per tail element");
  const Eigen::Index N = tail.front().rows();
  for (const auto& a : tail)
    if (a.rows() != N || a.cols() != N) throw Error(ErrorKind::dimension_mismatch, "au_convergence_diagnostic: operators differ in size");

  Operator S = Operator::Zero(N, N);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double w = strategy.weights.empty() ? 1.0 : strategy.weights[i];
    S += w * (tail[i].adjoint() * tail[i]);
    if (strategy.mode == AuMode::bilateral) S += w * (tail[i] * tail[i].adjoint());
  }
  S = 0.5 * (S + S.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Operator> es(S);  // ascending eigenvalues

  const auto max_removed = static_cast<Eigen::Index>(std::floor(epsilon * static_cast<double>(N) + 1e-12));
  AuResult best;
  best.achieved_sup = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r <= max_removed && r < N; ++r) {
    const Projection e = Projection::onto(es.eigenvectors().leftCols(N - r));
    double sup = 0.0;
    for (const auto& a : tail) {
      const Operator m = strategy.mode == AuMode::bilateral ? Operator(e.matrix() * a * e.matrix()) : Operator(a * e.matrix());
      sup = std::max(sup, operator_norm(m));
    }
    best.sup_by_removed.push_back(sup);
    if (sup < best.achieved_sup) {
      best.achieved_sup = sup;
      best.e = e;
      best.removed = r;
    }
  }
  best.complement_trace = static_cast<double>(best.removed) / static_cast<double>(N);
  if (best.removed == 0) best.e = Projection::identity(N);
  return best;
}

}  // namespace wwlab
