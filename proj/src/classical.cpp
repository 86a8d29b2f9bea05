#include "wwlab/classical.hpp"

#include "wwlab/fft.hpp"

namespace wwlab {

SampleStream make_stream(MultiIndex n, Eigen::VectorXcd values) {
  if (n.size() < 1 || !all_nonnegative(n)) throw Error(ErrorKind::invalid_argument, "make_stream: box must be >= 0 with d >= 1");
  if (static_cast<double>(values.size()) != box_volume(n))
    throw Error(ErrorKind::dimension_mismatch, "make_stream: " + std::to_string(values.size()) + " samples for box " + to_string(n));
  return {std::move(n), std::move(values)};
}

cplx classical_sample_average(const SampleStream& stream, const WeightSequence& a) {
  if (a.dim() != stream.dim()) throw Error(ErrorKind::dimension_mismatch, "classical_sample_average: weight dimension");
  CompensatedSum<cplx> acc;
  Eigen::Index i = 0;
  for_each_in_box(MultiIndex::Zero(stream.dim()), stream.n, [&](const MultiIndex& k) { acc.add(a(k) * stream.values[i++]); });
  return acc.value() / box_volume(stream.n);
}

cplx classical_sample_average(const SampleStream& stream, const TorusPoint& lambda) {
  if (lambda.dim() != stream.dim()) throw Error(ErrorKind::dimension_mismatch, "classical_sample_average: lambda dimension");
  CompensatedSum<cplx> acc;
  Eigen::Index i = 0;
  for_each_in_box(MultiIndex::Zero(stream.dim()), stream.n, [&](const MultiIndex& k) { acc.add(lambda.power(k) * stream.values[i++]); });
  return acc.value() / box_volume(stream.n);
}

Eigen::VectorXcd classical_sample_average_grid(const SampleStream& stream, const MultiIndex& grid) {
  if (grid.size() != stream.dim() || (grid.array() < 1).any())
    throw Error(ErrorKind::invalid_argument, "classical_sample_average_grid: grid resolution must be >= 1 per axis");
  Eigen::VectorXcd folded = fold_periodic(stream.values, stream.n, grid);
  dft_nd(folded, grid, false);
  return folded / box_volume(stream.n);
}

ClassicalSup classical_uniform_sup(const SampleStream& stream, const MultiIndex& grid) {
  const Eigen::VectorXcd v = classical_sample_average_grid(stream, grid);
  Eigen::Index idx = 0;
  const double value = v.cwiseAbs().maxCoeff(&idx);
  Eigen::VectorXd angles(grid.size());
  std::int64_t rest = idx;
  for (Eigen::Index j = grid.size() - 1; j >= 0; --j) {
    angles[j] = static_cast<double>(rest % grid[j]) / static_cast<double>(grid[j]);
    rest /= grid[j];
  }
  return {value, TorusPoint(angles)};
}

SampleStream sub_stream(const SampleStream& stream, const MultiIndex& m) {
  if (m.size() != stream.dim() || !all_nonnegative(m) || !componentwise_le(m, stream.n))
    throw Error(ErrorKind::out_of_range, "sub_stream: box " + to_string(m) + " outside stream box " + to_string(stream.n));
  const auto strides = row_major_strides((stream.n.array() + 1).matrix());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(box_volume(m)));
  Eigen::Index i = 0;
  for_each_in_box(MultiIndex::Zero(m.size()), m, [&](const MultiIndex& k) { out[i++] = stream.values[(k.array() * strides.array()).sum()]; });
  return {m, std::move(out)};
}

}  // namespace wwlab
