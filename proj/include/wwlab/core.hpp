#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace wwlab {

using cplx = std::complex<double>;

/// Lattice index in Z^d (or N^d). Dimension is a runtime quantity.
using MultiIndex = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  out_of_range,
  invariant_violation,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

MultiIndex multi_index(std::initializer_list<std::int64_t> components);
MultiIndex constant_index(int d, std::int64_t value);

/// |n+1| = prod_j (n_j + 1).
double box_volume(const MultiIndex& n);
/// prod_j (2 h_j + 1), the size of the symmetric box [-h, h].
double symmetric_box_volume(const MultiIndex& h);

bool all_nonnegative(const MultiIndex& k);
bool componentwise_le(const MultiIndex& a, const MultiIndex& b);
std::string to_string(const MultiIndex& k);

void require_same_dim(const MultiIndex& a, const MultiIndex& b, const char* what);

/// Row-major strides for a box of the given extents (count per axis).
Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> row_major_strides(const MultiIndex& counts);

/// Visit every k with lo <= k <= hi (inclusive, componentwise) in row-major order,
/// last axis fastest. Empty boxes are skipped.
template <class F>
void for_each_in_box(const MultiIndex& lo, const MultiIndex& hi, F&& f) {
  const auto d = lo.size();
  for (Eigen::Index j = 0; j < d; ++j)
    if (hi[j] < lo[j]) return;
  MultiIndex k = lo;
  while (true) {
    f(static_cast<const MultiIndex&>(k));
    Eigen::Index j = d - 1;
    while (j >= 0) {
      if (k[j] < hi[j]) {
        ++k[j];
        break;
      }
      k[j] = lo[j];
      --j;
    }
    if (j < 0) return;
  }
}

/// Neumaier-compensated accumulator. Addition order is the caller's, so results are
/// reproducible for a fixed traversal.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, cplx>) {
      double re = sum_.real(), im = sum_.imag();
      double cre = comp_.real(), cim = comp_.imag();
      step(re, cre, x.real());
      step(im, cim, x.imag());
      sum_ = {re, im};
      comp_ = {cre, cim};
    } else {
      step(sum_, comp_, x);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void step(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  T sum_{};
  T comp_{};
};

}  // namespace wwlab
