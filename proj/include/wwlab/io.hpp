#pragma once

#include "wwlab/au_diagnostic.hpp"
#include "wwlab/besicovitch.hpp"
#include "wwlab/classical.hpp"
#include "wwlab/kronecker.hpp"
#include "wwlab/ncsystem.hpp"
#include "wwlab/spectral.hpp"
#include "wwlab/vandercorput.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace wwlab::io {

using json = nlohmann::ordered_json;

json to_json(const cplx& v);
cplx complex_from_json(const json& j);
json to_json(const MultiIndex& k);
MultiIndex multi_index_from_json(const json& j);
json to_json(const TorusPoint& z);
TorusPoint torus_point_from_json(const json& j);
json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::VectorXcd& v);

/// Nested rows of [re, im] pairs.
json to_json(const Operator& x);
Operator operator_from_json(const json& j);

/// {"N": N, "unitaries": [...]}
json to_json(const MatrixSystem& sys);
MatrixSystem system_from_json(const json& j);

/// {"d", "box", "values"} with optional "lower", or {"box", "generator": {"kind": "trigpoly" | "example59", ...}}.
WeightSequence weight_sequence_from_json(const json& j);
json to_json(const WeightSequence& a);
json to_json(const TrigPolynomial& p);
TrigPolynomial trig_polynomial_from_json(const json& j);

/// {"box": [h], "coeffs": [[re, im], ...]} row-major over [-h, h].
json to_json(const FourierCoefficients& c);
FourierCoefficients fourier_from_json(const json& j);

/// {"atoms": [{"angles", "mass"}], "density_fourier": {...}}; "d" optional when atoms or density fix it.
json to_json(const TorusMeasure& mu);
TorusMeasure measure_from_json(const json& j);

json to_json(const CorrelationTable& t, bool with_diagnostics = true);
json to_json(const ClassificationReport& r);
json to_json(const WienerLadder& w);
json to_json(const AffinityResult& r);
json to_json(const AffinitySequenceReport& r);
json to_json(const PointBoundReport& r);
json to_json(const WeakConvergenceReport& r);
json to_json(const VdcBound& b);
json to_json(const VdcFuzzReport& r);
json to_json(const WwProofReport& r);
json to_json(const KroneckerDecomposition& k);
json to_json(const AuResult& r);
template <class T>
json to_json(const IdentityCheck<T>& c);

/// Columns m_1..m_d, re, im, ladder_spread.
std::string correlation_table_csv(const CorrelationTable& t);

/// One JSON header line {"d", "box"} then little-endian complex64 samples, row-major.
SampleStream read_stream(const std::filesystem::path& path);
void write_stream(const std::filesystem::path& path, const SampleStream& stream);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wwlab::io
