#pragma once

#include "wwlab/torus.hpp"
#include "wwlab/weights.hpp"

namespace wwlab {

/// Samples f(T^k omega) for k in [0, n], row-major.
struct SampleStream {
  MultiIndex n;
  Eigen::VectorXcd values;

  int dim() const { return static_cast<int>(n.size()); }
};

SampleStream make_stream(MultiIndex n, Eigen::VectorXcd values);

/// (1/|n+1|) sum a(k) f_k.
cplx classical_sample_average(const SampleStream& stream, const WeightSequence& a);
/// (1/|n+1|) sum lambda^k f_k.
cplx classical_sample_average(const SampleStream& stream, const TorusPoint& lambda);
/// All twists lambda = l / grid at once, row-major over l in [0, grid).
Eigen::VectorXcd classical_sample_average_grid(const SampleStream& stream, const MultiIndex& grid);

struct ClassicalSup {
  double value = 0.0;
  TorusPoint argmax;
};
ClassicalSup classical_uniform_sup(const SampleStream& stream, const MultiIndex& grid);

/// Leading sub-box [0, m] of a stream.
SampleStream sub_stream(const SampleStream& stream, const MultiIndex& m);

}  // namespace wwlab
