#pragma once

#include "wwlab/linalg.hpp"
#include "wwlab/rng.hpp"
#include "wwlab/torus.hpp"
#include "wwlab/weights.hpp"

#include <vector>

namespace wwlab {

/// (M_N, tau, T) with T_j(x) = U_j x U_j^* for pairwise commuting unitaries U_1..U_d.
class MatrixSystem {
 public:
  MatrixSystem() = default;
  explicit MatrixSystem(std::vector<Operator> unitaries, double tol = 1e-10);
  static MatrixSystem identity(Eigen::Index N, int d);

  int dim() const { return static_cast<int>(unitaries_.size()); }
  Eigen::Index size() const { return N_; }
  const Operator& unitary(int j) const { return unitaries_[static_cast<std::size_t>(j)]; }
  const std::vector<Operator>& unitaries() const { return unitaries_; }
  double tolerance() const { return tol_; }

  /// U^k = prod_j U_j^{k_j}; negative exponents use adjoints.
  Operator unitary_power(const MultiIndex& k) const;
  /// One step T_j(x), or T_j^{-1}(x) when inverse is set.
  Operator step(int j, const Operator& x, bool inverse = false) const;

 private:
  Eigen::Index N_ = 0;
  std::vector<Operator> unitaries_;
  double tol_ = 1e-10;
};

Operator apply_power(const MatrixSystem& sys, const Operator& x, const MultiIndex& k);

/// (1/|n+1|) sum_{0<=k<=n} T^k x.
Operator ergodic_average(const MatrixSystem& sys, const Operator& x, const MultiIndex& n);
/// (1/|n+1|) sum_{0<=k<=n} a(k) T^k x.
Operator weighted_average(const MatrixSystem& sys, const Operator& x, const WeightSequence& a, const MultiIndex& n);
/// (1/|n+1|) sum_{0<=k<=n} lambda^k T^k x.
Operator twisted_average(const MatrixSystem& sys, const Operator& x, const TorusPoint& lambda, const MultiIndex& n);

/// gamma_x(m) = tau((T^m x)^* x).
cplx operator_correlation(const MatrixSystem& sys, const Operator& x, const MultiIndex& m);

/// (1/|n+1|) sum over k with 0 <= k, k+m <= n of T^{k+m}(x^*) T^k(x).
Operator operator_spectral_coeff(const MatrixSystem& sys, const Operator& x, const MultiIndex& m, const MultiIndex& n);
/// Same coefficient as the integral of z^m q(z), q(z) = X(z)^* X(z) / |n+1| with X(z) = sum_k T^k(x) z^k,
/// evaluated by an exact uniform quadrature with more than n_j + |m_j| nodes per axis.
Operator operator_spectral_coeff_quadrature(const MatrixSystem& sys, const Operator& x, const MultiIndex& m,
                                            const MultiIndex& n);

/// Commuting system U_j = V diag(e^{2 pi i theta_jp}) V^* with Haar V and uniform phases.
MatrixSystem random_commuting_system(Eigen::Index N, int d, Rng& rng);

/// Twisted averages on the root-of-unity grid lambda = l / grid, l in [0, grid)^d, row-major.
std::vector<Operator> twisted_average_grid(const MatrixSystem& sys, const Operator& x, const MultiIndex& n,
                                           const MultiIndex& grid);

struct UniformSup {
  double value = 0.0;
  /// angles of the maximizing grid point
  TorusPoint argmax;
};

/// max over the root-of-unity grid of ||twisted_average(x, lambda, n) e||, via one DFT per matrix entry.
UniformSup uniform_ww_sup(const MatrixSystem& sys, const Operator& x, const Projection& e, const MultiIndex& n,
                          const MultiIndex& grid);
/// Same maximum from individually computed twisted averages.
UniformSup uniform_ww_sup_naive(const MatrixSystem& sys, const Operator& x, const Projection& e, const MultiIndex& n,
                                const MultiIndex& grid);

}  // namespace wwlab
