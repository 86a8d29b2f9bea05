#pragma once

#include "wwlab/core.hpp"

namespace wwlab {

/// In-place d-dimensional DFT of a row-major array with the given per-axis sizes.
/// forward: X(f) = sum_k x(k) e^{-2 pi i f.k / L}; inverse uses e^{+2 pi i ...} and no scaling.
void dft_nd(Eigen::VectorXcd& data, const MultiIndex& sizes, bool forward);

/// Fold a box-indexed array (row-major over [0, extent]) modulo `period` per axis.
Eigen::VectorXcd fold_periodic(const Eigen::VectorXcd& values, const MultiIndex& extent,
                               const MultiIndex& period);

}  // namespace wwlab
