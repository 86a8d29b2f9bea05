#include "wwlab/core.hpp"

#include <sstream>

namespace wwlab {

MultiIndex multi_index(std::initializer_list<std::int64_t> components) {
  MultiIndex k(static_cast<Eigen::Index>(components.size()));
  Eigen::Index j = 0;
  for (auto c : components) k[j++] = c;
  return k;
}

MultiIndex constant_index(int d, std::int64_t value) { return MultiIndex::Constant(d, value); }

double box_volume(const MultiIndex& n) {
  double v = 1.0;
  for (Eigen::Index j = 0; j < n.size(); ++j) v *= static_cast<double>(n[j] + 1);
  return v;
}

double symmetric_box_volume(const MultiIndex& h) {
  double v = 1.0;
  for (Eigen::Index j = 0; j < h.size(); ++j) v *= static_cast<double>(2 * h[j] + 1);
  return v;
}

bool all_nonnegative(const MultiIndex& k) { return (k.array() >= 0).all(); }

bool componentwise_le(const MultiIndex& a, const MultiIndex& b) {
  return a.size() == b.size() && (a.array() <= b.array()).all();
}

std::string to_string(const MultiIndex& k) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index j = 0; j < k.size(); ++j) os << (j ? "," : "") << k[j];
  os << ')';
  return os.str();
}

void require_same_dim(const MultiIndex& a, const MultiIndex& b, const char* what) {
  if (a.size() != b.size())
    throw Error(ErrorKind::dimension_mismatch,
                std::string(what) + ": dimension " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> row_major_strides(const MultiIndex& counts) {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> s(counts.size());
  std::int64_t acc = 1;
  for (Eigen::Index j = counts.size() - 1; j >= 0; --j) {
    s[j] = acc;
    acc *= counts[j];
  }
  return s;
}

}  // namespace wwlab
