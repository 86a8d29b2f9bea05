#pragma once

#include "wwlab/coefficients.hpp"
#include "wwlab/weights.hpp"

#include <optional>

namespace wwlab {

struct Atom {
  TorusPoint point;
  double mass = 0.0;
};

/// Measure on T^d split as atoms plus an absolutely continuous part with trig-polynomial
/// density f(z) = sum_k fhat(k) z^k (fhat(k) = integral of f(z) conj(z)^k against Haar).
/// Singular-continuous parts are not representable.
class TorusMeasure {
 public:
  TorusMeasure() = default;
  TorusMeasure(int d, std::vector<Atom> atoms, std::optional<FourierCoefficients> density = std::nullopt,
               double torus_tol = kDefaultTorusTolerance);

  static TorusMeasure zero(int d) { return TorusMeasure(d, {}); }
  static TorusMeasure dirac(const TorusPoint& z, double mass = 1.0);
  static TorusMeasure haar(int d);

  int dim() const { return d_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<FourierCoefficients>& density() const { return density_; }

  double atomic_mass() const;
  /// Total mass: atoms plus fhat(0).
  double total_mass() const;
  /// Density value at z (0 without a density part).
  double density_at(const TorusPoint& z) const;

 private:
  int d_ = 0;
  std::vector<Atom> atoms_;
  std::optional<FourierCoefficients> density_;
};

/// integral of z^m against mu.
cplx fourier_stieltjes(const TorusMeasure& mu, const MultiIndex& m);

/// Empirical spectral measure with density |sum_{k<=n} a(k) conj(z)^k|^2 / |n+1|.
struct EmpiricalDensity {
  MultiIndex n;
  /// Windowed sequence a(k), 0 <= k <= n, row-major.
  Eigen::VectorXcd window;
  /// Moment coefficients on [-n, n].
  FourierCoefficients fourier;

  int dim() const { return static_cast<int>(n.size()); }
  /// Density at z from the defining squared sum.
  double operator()(const TorusPoint& z) const;
  /// Density at z from the Fourier coefficients.
  double from_coefficients(const TorusPoint& z) const;
  double total_mass() const { return fourier.at(MultiIndex::Zero(n.size())).real(); }
  TorusMeasure as_measure() const;
};

/// FFT autocorrelation path.
EmpiricalDensity empirical_density(const WeightSequence& a, const MultiIndex& n);
/// Definitional double-loop path; same result, O(|n+1|^2).
EmpiricalDensity empirical_density_direct(const WeightSequence& a, const MultiIndex& n);

struct PointMass {
  double mass = 0.0;
  /// Imaginary part of the average; nonzero only through rounding or non-Hermitian input.
  double imag = 0.0;
};

/// (1/prod(2h+1)) sum_{k in [-h, h]} conj(z)^k c(k) for moment coefficients c.
PointMass point_mass(const FourierCoefficients& coeffs, const TorusPoint& z, const MultiIndex& h);
PointMass point_mass(const EmpiricalDensity& density, const TorusPoint& z);

/// (1/prod(2h+1)) sum_{l in [-h, h]} |c(l)|^2. Normalized by the box size, so a unit
/// point mass gives exactly 1; the limit-zero criterion is unaffected by the choice.
double wiener_continuity(const FourierCoefficients& coeffs, const MultiIndex& h);

struct WienerLadder {
  std::vector<MultiIndex> halfwidths;
  Eigen::VectorXd values;
  double tolerance = 0.0;
  bool empirically_continuous = false;
};
WienerLadder wiener_ladder(const FourierCoefficients& coeffs, const std::vector<MultiIndex>& halfwidths,
                           double tolerance);

struct AffinityOptions {
  double torus_tol = kDefaultTorusTolerance;
  double relative_tolerance = 1e-6;
  /// Per-axis starting resolution and refinement cap for the continuous part.
  int initial_resolution = 16;
  std::int64_t max_points = std::int64_t{1} << 22;
};

struct AffinityResult {
  double value = 0.0;
  double atomic_part = 0.0;
  double continuous_part = 0.0;
  /// Per-axis resolution of the last quadrature grid (0 if no continuous part).
  std::int64_t resolution = 0;
  bool converged = true;
};

/// Hellinger affinity. The density quotient is taken as 0 wherever either density is <= 0.
AffinityResult affinity(const TorusMeasure& P, const TorusMeasure& Q, const AffinityOptions& options = {});

/// Finite-n check of |(1/|n+1|) sum a(k) conj(b(k))| against rho(sigma_a, sigma_b).
struct AffinitySequenceReport {
  std::vector<MultiIndex> ladder;
  Eigen::VectorXd values;
  std::optional<double> bound;
  double tolerance = 0.0;
  bool violation = false;
};
AffinitySequenceReport affinity_sequences(const WeightSequence& a, const WeightSequence& b,
                                          const std::vector<MultiIndex>& ladder,
                                          const std::optional<TorusMeasure>& sigma_a,
                                          const std::optional<TorusMeasure>& sigma_b, double tolerance,
                                          const AffinityOptions& options = {});

/// Ladder of |amplitude| against sqrt(point mass) of the correlation-based spectral estimate.
struct PointBoundReport {
  TorusPoint z;
  std::vector<MultiIndex> ladder;
  MultiIndex spectral_halfwidth;
  Eigen::VectorXd amplitude;
  Eigen::VectorXd point_mass;
  Eigen::VectorXd bound;
  double tolerance = 0.0;
  bool violation = false;
};
PointBoundReport ww_pointbound(const WeightSequence& a, const TorusPoint& z, const std::vector<MultiIndex>& ladder,
                               const MultiIndex& spectral_halfwidth, double tolerance);

/// Test function f(z) = sum_m f_m z^m with integer frequencies.
struct TorusPolynomial {
  std::vector<std::pair<MultiIndex, cplx>> terms;
  static TorusPolynomial monomial(const MultiIndex& m, cplx c = 1.0) { return {{{m, c}}}; }
  cplx operator()(const TorusPoint& z) const;
};

struct WeakConvergenceReport {
  std::vector<MultiIndex> ladder;
  /// rows: test functions, columns: rungs
  Eigen::MatrixXcd pairings;
  Eigen::VectorXcd target;
  Eigen::VectorXd top_discrepancy;
  double max_discrepancy = 0.0;
};
WeakConvergenceReport weak_convergence_check(const WeightSequence& a, const TorusMeasure& target,
                                             const std::vector<TorusPolynomial>& test_functions,
                                             const std::vector<MultiIndex>& ladder);

/// integral of f against the empirical density, by Fourier pairing.
cplx integrate(const TorusPolynomial& f, const EmpiricalDensity& density);
cplx integrate(const TorusPolynomial& f, const TorusMeasure& mu);

}  // namespace wwlab
