#pragma once

#include "wwlab/coefficients.hpp"
#include "wwlab/torus.hpp"

#include <functional>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

namespace wwlab {

struct TrigTerm {
  TorusPoint frequency;
  cplx coefficient;
};

/// Finite sum k -> sum_alpha c_alpha z_alpha^k with pairwise distinct frequencies.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(int d, std::vector<TrigTerm> terms, double torus_tol = kDefaultTorusTolerance);

  int dim() const { return d_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx operator()(const MultiIndex& k) const;
  /// Limiting correlation sum_alpha |c_alpha|^2 z_alpha^m.
  cplx correlation(const MultiIndex& m) const;
  /// Smallest circular distance between two frequencies (max over axes); +inf for < 2 terms.
  double min_frequency_gap() const;

 private:
  int d_ = 0;
  std::vector<TrigTerm> terms_;
};

/// a(k) = (-1)^{floor(log_base(k_1 + ... + k_d + 1))}; zero if any component is negative.
struct Example59 {
  int d = 1;
  double log_base = std::numbers::e;
  cplx operator()(const MultiIndex& k) const;
};

using Generator = std::variant<std::monostate, TrigPolynomial, Example59>;

/// Bounded complex function on the box [lower, lower + extent] of Z^d, zero elsewhere.
/// Sequences on N^d have lower = 0.
class WeightSequence {
 public:
  WeightSequence() = default;

  static WeightSequence from_values(MultiIndex extent, Eigen::VectorXcd values);
  static WeightSequence from_values(MultiIndex lower, MultiIndex extent, Eigen::VectorXcd values);
  static WeightSequence from_generator(Generator generator, MultiIndex extent);
  static WeightSequence from_function(MultiIndex lower, MultiIndex extent,
                                      const std::function<cplx(const MultiIndex&)>& f);
  static WeightSequence constant(cplx value, MultiIndex extent);

  int dim() const { return static_cast<int>(extent_.size()); }
  const MultiIndex& lower() const { return lower_; }
  const MultiIndex& extent() const { return extent_; }
  MultiIndex upper() const { return lower_ + extent_; }
  const Eigen::VectorXcd& values() const { return values_; }
  const Generator& generator() const { return generator_; }
  bool has_generator() const { return !std::holds_alternative<std::monostate>(generator_); }

  bool contains(const MultiIndex& k) const;
  cplx operator()(const MultiIndex& k) const;
  /// Offset of k into values(); k must be inside the box.
  std::int64_t offset(const MultiIndex& k) const;
  const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>& strides() const { return strides_; }

  double sup_norm() const;

 private:
  WeightSequence(MultiIndex lower, MultiIndex extent, Eigen::VectorXcd values, Generator generator);

  MultiIndex lower_;
  MultiIndex extent_;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> strides_;
  Eigen::VectorXcd values_;
  Generator generator_;
};

Generator example59(int d, double log_base = std::numbers::e);

/// (1/|n+1|) sum_{k in [-n, n]} conj(a(k)) a(k + m), the truncated correlation.
cplx correlation_estimate(const WeightSequence& a, const MultiIndex& m, const MultiIndex& n);

/// Geometric truncation ladder ending at `top`: top / ratio^{rungs-1}, ..., top.
std::vector<MultiIndex> geometric_ladder(const MultiIndex& top, int rungs = 5, double ratio = 2.0);
void validate_ladder(const std::vector<MultiIndex>& ladder, int d);

/// Truncated correlations for every m in [-h, h] at truncation n, computed as one FFT
/// cross-correlation. Agrees with correlation_estimate up to rounding.
FourierCoefficients correlation_block(const WeightSequence& a, const MultiIndex& n, const MultiIndex& h);

struct CorrelationTable {
  MultiIndex halfwidth;
  std::vector<MultiIndex> ladder;
  /// Estimates at the largest ladder box.
  FourierCoefficients entries;
  /// rows follow entries' layout, one column per ladder rung
  Eigen::MatrixXcd diagnostics;
  /// |estimate(top) - estimate(previous rung)| per entry
  Eigen::VectorXd ladder_spread;
  double tolerance = 0.0;
  bool appears_in_S = false;

  int dim() const { return static_cast<int>(halfwidth.size()); }
  cplx at(const MultiIndex& m) const { return entries.at(m); }
  double max_hermitian_defect() const;
};

CorrelationTable correlation_table(const WeightSequence& a, const MultiIndex& halfwidth,
                                   const std::vector<MultiIndex>& ladder, double tolerance);

inline constexpr double kSupremumExponent = std::numeric_limits<double>::infinity();

/// ((1/|n+1|) sum_{k in [-n, n]} |A(k)|^p)^{1/p}; p = infinity gives the sup over the stored box.
double marcinkiewicz_seminorm(const WeightSequence& A, double p, const MultiIndex& n);

/// (1/|n+1|) sum_{k in [-n, n]} conj(A(k)) B(k).
cplx semi_inner_product(const WeightSequence& A, const WeightSequence& B, const MultiIndex& n);

/// Sequence k -> A(k + m).
WeightSequence translate(const WeightSequence& A, const MultiIndex& m);

/// (1/|n+1|) sum_{k=0}^{n} a(k) conj(z)^k.
cplx amplitude_estimate(const WeightSequence& a, const TorusPoint& z, const MultiIndex& n);
Eigen::VectorXcd amplitude_ladder(const WeightSequence& a, const TorusPoint& z,
                                  const std::vector<MultiIndex>& ladder);

/// Sum over k in [lo, hi] of conj(a(k)) * b(k + shift), skipping indices outside either support.
cplx shifted_conj_sum(const WeightSequence& a, const WeightSequence& b, const MultiIndex& shift,
                      const MultiIndex& lo, const MultiIndex& hi);

}  // namespace wwlab
