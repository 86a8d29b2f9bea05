#pragma once

#include "wwlab/linalg.hpp"

#include <vector>

namespace wwlab {

enum class AuMode { bilateral, one_sided };

struct AuStrategy {
  AuMode mode = AuMode::bilateral;
  /// Weight per tail element in S = sum w |A|^2 (plus |A^*|^2 when bilateral); empty means uniform.
  std::vector<double> weights;
};

struct AuResult {
  Projection e;
  /// max over the tail of ||e A e|| (bilateral) or ||A e|| (one-sided)
  double achieved_sup = 0.0;
  double complement_trace = 0.0;
  /// number of top eigenvectors of S removed
  Eigen::Index removed = 0;
  /// sup for each candidate r = 0 .. floor(epsilon N)
  std::vector<double> sup_by_removed;
};

/// Heuristic search over spectral projections of the tail-energy operator S: drop the r
/// largest eigenvectors for each admissible r and keep the best. An upper bound only.
AuResult au_convergence_diagnostic(const std::vector<Operator>& tail, double epsilon, const AuStrategy& strategy = {});

}  // namespace wwlab
