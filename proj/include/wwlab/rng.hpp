#pragma once

#include "wwlab/core.hpp"

#include <random>

namespace wwlab {

/// Seeded generator with distribution code written out here, so sampled values do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  double normal();
  cplx complex_normal() { return {normal(), normal()}; }
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
  /// Haar-distributed unitary via QR of a complex Gaussian matrix with phase correction.
  Eigen::MatrixXcd haar_unitary(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wwlab
