#pragma once

#include "wwlab/spectral.hpp"
#include "wwlab/weights.hpp"

#include <string>

namespace wwlab {

enum class Verdict {
  consistent,
  fails_1,
  fails_2,
  fails_3,
  inconclusive_2,
  inconclusive,
};

/// "consistent-with-bounded-Besicovitch", "fails-(1)", ..., "inconclusive".
std::string to_string(Verdict v);

struct ClassificationConfig {
  /// Truncation ladder; empty means a geometric ladder ending at extent - spectral_halfwidth.
  std::vector<MultiIndex> ladder;
  int ladder_rungs = 5;
  double ladder_ratio = 2.0;
  /// Correlation halfwidth h used for spectral estimates; empty means 128 (d=1), 16 (d=2), 4 (d>2).
  MultiIndex spectral_halfwidth;
  /// Caller-supplied candidate atoms. Must be non-empty.
  std::vector<TorusPoint> candidates;
  bool detect_peaks = true;
  /// Per-axis oversampling of the Fejer grid relative to h+1.
  int peak_oversampling = 4;
  /// Peak threshold and atom floor as fractions of gamma(0).
  double peak_threshold = 0.05;
  double min_atom_mass = 0.02;
  /// Atoms below continuum_factor / prod(h+1) * gamma(0) are indistinguishable from a density.
  double continuum_factor = 4.0;
  double correlation_tol = 0.05;
  double amplitude_tol = 0.05;
  double amplitude_fail_spread = 0.25;
  /// Mass deficit gamma(0) - sum(atoms) above mass_tol * gamma(0) means the spectrum is not discrete.
  double mass_tol = 0.1;
  double discrepancy_tol = 0.1;
  double torus_tol = kDefaultTorusTolerance;
};

struct AmplitudeEvidence {
  TorusPoint point;
  Eigen::VectorXcd ladder;
  /// |Gamma(top) - Gamma(previous rung)|
  double step = 0.0;
  /// max over rungs of |Gamma(r) - Gamma(top)|
  double spread = 0.0;
  bool stable = false;
};

struct AtomEvidence {
  TorusPoint point;
  /// Fejer-weighted point-mass estimate, used for the spectrum.
  double mass = 0.0;
  /// Dirichlet point mass at the same halfwidth.
  double point_mass = 0.0;
  AmplitudeEvidence amplitude;
  /// mass - |Gamma(top)|^2
  double discrepancy = 0.0;
  bool from_peak = false;
};

struct ClassificationReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<MultiIndex> ladder;
  MultiIndex spectral_halfwidth;
  CorrelationTable correlations;
  double total_mass = 0.0;
  double atomic_mass = 0.0;
  double mass_deficit = 0.0;
  double wiener_value = 0.0;
  std::vector<AtomEvidence> atoms;
  std::vector<AmplitudeEvidence> candidates;
  std::vector<std::string> notes;
};

/// (1/prod(h+1)) sum_{|m|<=h} prod(1 - |m_j|/(h_j+1)) conj(z)^m c(m): Fejer-weighted point mass.
double fejer_point_mass(const FourierCoefficients& coeffs, const TorusPoint& z, const MultiIndex& h);

ClassificationReport classify_besicovitch(const WeightSequence& a, const ClassificationConfig& config);

/// Uniform root-of-unity grid with `resolution` points per axis.
std::vector<TorusPoint> root_of_unity_grid(int d, std::int64_t resolution);

}  // namespace wwlab
