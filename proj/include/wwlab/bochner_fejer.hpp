#pragma once

#include "wwlab/weights.hpp"

namespace wwlab {

/// Orders n_1..n_r and bases beta_1..beta_r for one lattice axis. Rational independence of
/// the bases is the caller's declaration; it is not checked.
struct BochnerFejerAxis {
  std::vector<int> orders;
  std::vector<double> bases;
};

class BochnerFejerSpec {
 public:
  BochnerFejerSpec() = default;
  explicit BochnerFejerSpec(std::vector<BochnerFejerAxis> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const BochnerFejerAxis& axis(int j) const { return axes_[static_cast<std::size_t>(j)]; }

  /// d_B(nu) = prod_i (1 - |nu_i| / n_i) for one axis.
  double weight(int axis, const MultiIndex& nu) const;
  /// Frequency angle nu . beta (mod 1) for one axis.
  double frequency(int axis, const MultiIndex& nu) const;

 private:
  std::vector<BochnerFejerAxis> axes_;
};

/// K_B(t) = prod_j sum_nu d_{B_j}(nu) e^{2 pi i (nu . beta_j) t_j}.
cplx bochner_fejer_kernel_eval(const BochnerFejerSpec& spec, const MultiIndex& t);

/// Term-by-term evaluation of the kernel's defining multi-sum; used to cross-check the
/// factored form above.
cplx bochner_fejer_kernel_direct(const BochnerFejerSpec& spec, const MultiIndex& t);

/// K_B * a as a trig polynomial: coefficient d_B(nu) * amplitude_estimate(a, z_nu, n) at each
/// lattice frequency z_nu. Frequencies that coincide within `torus_tol` are merged by adding
/// their weights, which is what the convolution sum does.
TrigPolynomial bochner_fejer_convolve(const BochnerFejerSpec& spec, const WeightSequence& a, const MultiIndex& n,
                                      double torus_tol = kDefaultTorusTolerance);

}  // namespace wwlab
