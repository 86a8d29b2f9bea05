#include "wwlab/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace wwlab {

void dft_nd(Eigen::VectorXcd& data, const MultiIndex& sizes, bool forward) {
  const auto strides = row_major_strides(sizes);
  const std::int64_t total = strides.size() ? strides[0] * sizes[0] : 1;
  if (total != data.size()) throw Error(ErrorKind::dimension_mismatch, "dft_nd: size mismatch");

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> line, out;
  for (Eigen::Index axis = 0; axis < sizes.size(); ++axis) {
    const std::int64_t len = sizes[axis];
    const std::int64_t stride = strides[axis];
    if (len <= 1) continue;
    line.resize(static_cast<std::size_t>(len));
    // every line along `axis` starts at an offset whose axis-coordinate is zero
    for (std::int64_t start = 0; start < total; ++start) {
      if ((start / stride) % len != 0) continue;
      for (std::int64_t i = 0; i < len; ++i) line[static_cast<std::size_t>(i)] = data[start + i * stride];
      if (forward)
        fft.fwd(out, line);
      else
        fft.inv(out, line);
      for (std::int64_t i = 0; i < len; ++i) data[start + i * stride] = out[static_cast<std::size_t>(i)];
    }
  }
}

Eigen::VectorXcd fold_periodic(const Eigen::VectorXcd& values, const MultiIndex& extent,
                               const MultiIndex& period) {
  require_same_dim(extent, period, "fold_periodic");
  const MultiIndex counts = (extent.array() + 1).matrix();
  const auto src_strides = row_major_strides(counts);
  const auto dst_strides = row_major_strides(period);
  std::int64_t total = 1;
  for (Eigen::Index j = 0; j < period.size(); ++j) {
    if (period[j] < 1) throw Error(ErrorKind::invalid_argument, "fold_periodic: period must be >= 1");
    total *= period[j];
  }
  if (values.size() != counts.prod()) throw Error(ErrorKind::dimension_mismatch, "fold_periodic: value count");
  Eigen::VectorXcd folded = Eigen::VectorXcd::Zero(total);
  for_each_in_box(MultiIndex::Zero(extent.size()), extent, [&](const MultiIndex& k) {
    std::int64_t src = 0, dst = 0;
    for (Eigen::Index j = 0; j < k.size(); ++j) {
      src += k[j] * src_strides[j];
      dst += (k[j] % period[j]) * dst_strides[j];
    }
    folded[dst] += values[src];
  });
  return folded;
}

}  // namespace wwlab
