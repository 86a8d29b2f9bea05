#pragma once

#include "wwlab/linalg.hpp"
#include "wwlab/ncsystem.hpp"
#include "wwlab/rng.hpp"

#include <string>
#include <vector>

namespace wwlab {

/// lhs and rhs of a summation identity, computed independently.
template <class T>
struct IdentityCheck {
  T lhs;
  T rhs;
  /// |lhs - rhs| / max(|lhs|, |rhs|, sum of |a|); operator norm for matrix entries.
  double deviation = 0.0;
  bool outside_hypothesis = false;
};

/// (h+1) sum_{j=1}^n a_j against sum_{k=1}^{n+h} sum_{j=k-h}^{k} a_j, with a_j = 0 off 1..n.
template <class T>
IdentityCheck<T> formula1_check(const std::vector<T>& values, std::int64_t h);

/// sum_{k=1}^{n+h} sum_{j,j'=k-h}^{k} a_{j,j'} against
/// (h+1) sum_j a_{jj} + sum_{d=1}^{h} (h-d+1) sum_j (a_{j,j+d} + a_{j+d,j}). array[j-1][j'-1] = a_{j,j'}.
template <class T>
IdentityCheck<T> formula2_check(const std::vector<std::vector<T>>& array, std::int64_t h);

/// a_{j1,j2}, 1 <= j_i <= n_i, stored for 1 <= j_i <= s_i with s_i >= n_i and zero elsewhere.
/// Averages run over n; shifted terms may read stored entries beyond n.
class OperatorArray2D {
 public:
  OperatorArray2D() = default;
  OperatorArray2D(Eigen::Index N, std::int64_t n1, std::int64_t n2);
  OperatorArray2D(Eigen::Index N, std::int64_t n1, std::int64_t n2, std::int64_t s1, std::int64_t s2);

  static OperatorArray2D constant(const Operator& value, std::int64_t n1, std::int64_t n2, std::int64_t s1,
                                  std::int64_t s2);
  /// Complex Gaussian entries plus a shared random multiple of the identity.
  static OperatorArray2D random(Rng& rng, Eigen::Index N, std::int64_t n1, std::int64_t n2, std::int64_t s1,
                                std::int64_t s2);

  Eigen::Index op_size() const { return N_; }
  std::int64_t n1() const { return n1_; }
  std::int64_t n2() const { return n2_; }
  std::int64_t s1() const { return s1_; }
  std::int64_t s2() const { return s2_; }

  /// Zero operator outside the stored range.
  const Operator& operator()(std::int64_t j1, std::int64_t j2) const;
  Operator& at(std::int64_t j1, std::int64_t j2);
  /// Same entries with storage cut back to the averaging range.
  OperatorArray2D padded() const;

 private:
  Eigen::Index N_ = 0;
  std::int64_t n1_ = 0, n2_ = 0, s1_ = 0, s2_ = 0;
  std::vector<Operator> entries_;
  Operator zero_;
};

/// Norms of (1/n1 n2) sum_j of the products appearing in the bound, for shifts up to (h1, h2).
struct VdcShiftTable {
  std::int64_t h1 = 0, h2 = 0;
  double lhs = 0.0;
  double diagonal = 0.0;
  std::vector<double> shift1;                 // ||avg a*_{j} a_{j+(d1,0)}||, index d1-1
  std::vector<double> shift2;                 // ||avg a*_{j} a_{j+(0,d2)}||, index d2-1
  std::vector<std::vector<double>> joint;     // ||avg a*_{j} a_{j+(d1,d2)}||
  std::vector<std::vector<double>> mixed;     // ||avg a*_{j+(d1,0)} a_{j+(0,d2)}||
};
VdcShiftTable vdc_shift_table(const OperatorArray2D& array, std::int64_t h1, std::int64_t h2);

struct VdcBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double H = 1.0;
  double diagonal_group = 0.0;
  double shift1_group = 0.0;
  double shift2_group = 0.0;
  double joint_group = 0.0;
  double mixed_group = 0.0;
  bool outside_hypothesis = false;
};

/// lhs = ||(1/n1 n2) sum a||^2 and the five-group right-hand side with H = (h1+1)(h2+1).
VdcBound vdc_bound(const OperatorArray2D& array, std::int64_t h1, std::int64_t h2);
/// Bound for (h1, h2) read from a table built with at least these shifts.
VdcBound vdc_bound(const VdcShiftTable& table, std::int64_t n1, std::int64_t n2, std::int64_t h1, std::int64_t h2);

struct VdcFuzzConfig {
  std::uint64_t seed = 7;
  int trials = 1000;
  Eigen::Index max_dim = 4;
  std::int64_t max_n1 = 8, max_n2 = 8;
  /// "admissible": 0 <= h <= n; "beyond": also h = n + 1, n + 2 (flagged)
  std::string h_policy = "admissible";
  double tolerance = 1e-10;
  bool include_zero_trial = true;
};

struct VdcCase {
  int trial = 0;
  Eigen::Index dim = 0;
  std::int64_t n1 = 0, n2 = 0, h1 = 0, h2 = 0;
  bool padded = false;
  double lhs = 0.0, rhs = 0.0;
  bool outside_hypothesis = false;
};

struct VdcFuzzReport {
  VdcFuzzConfig config;
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  std::int64_t outside_hypothesis = 0;
  /// failures among flagged runs; reported, not counted as violations
  std::int64_t outside_violations = 0;
  double min_slack = 0.0;
  double max_ratio = 0.0;
  std::vector<VdcCase> violating;
  std::vector<VdcCase> flagged;
  /// zero-array smoke trial
  double zero_lhs = 0.0, zero_rhs = 0.0;
};

VdcFuzzReport vdc_fuzz(const VdcFuzzConfig& config);

struct WwProofReport {
  std::int64_t n1 = 0, n2 = 0, h1 = 0, h2 = 0;
  /// max over the grid of ||M_n(x, lambda) e||^2
  double grid_sup_squared = 0.0;
  TorusPoint argmax;
  /// five-group bound with entries e M_n(x^* T^d x) e, all shifted terms read past n
  VdcBound extended;
  /// same array with entries past n set to zero
  VdcBound padded;
  /// (4/H) ||x||_2^2 + (8/H) sum_{|l| <= h} |gamma_x(l)|
  double limit_bound = 0.0;
  /// (1/prod(2h+1)) sum_{|l| <= h} |gamma_x(l)|^2
  double wiener_average = 0.0;
  /// (1/H) sum_{|l| <= h} |gamma_x(l)|
  double correlation_average = 0.0;
  bool violation = false;
  bool outside_hypothesis = false;
};

/// Twisted averages over 0..n use n_i + 1 terms per axis, matching the inequality with a_{j} =
/// lambda^{j-1} T^{j-1}(x) e.
WwProofReport vdc_apply_wwproof(const MatrixSystem& sys, const Operator& x, const Projection& e, const MultiIndex& n,
                                const MultiIndex& h, const MultiIndex& grid, double tolerance = 1e-8);

}  // namespace wwlab
