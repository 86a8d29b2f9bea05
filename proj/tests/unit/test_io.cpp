#include <doctest.h>

#include "wwlab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <cstring>
#include <functional>

using namespace wwlab;
using io::json;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wwlab_test_" + name);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("scalars and indices round-trip") {
  CHECK(io::complex_from_json(io::to_json(cplx(1.5, -2.0))) == cplx(1.5, -2.0));
  CHECK(io::complex_from_json(json(3.0)) == cplx(3.0));
  CHECK(io::multi_index_from_json(io::to_json(multi_index({3, -1, 0}))) == multi_index({3, -1, 0}));
  CHECK(io::multi_index_from_json(json(7)) == multi_index({7}));
  CHECK(io::torus_point_from_json(io::to_json(TorusPoint::from_angles({0.25, 0.5}))).approx_equal(TorusPoint::from_angles({0.25, 0.5})));
  CHECK(kind_of([] { io::complex_from_json(json::array({1, 2, 3})); }) == ErrorKind::io);
}

TEST_CASE("operators and systems round-trip") {
  Rng rng(1);
  const Operator x = rng.gaussian_matrix(3, 3);
  CHECK(io::operator_from_json(io::to_json(x)) == x);
  const json j = json::parse(R"({"N": 2, "unitaries": [[[[1, 0], [0, 0]], [[0, 0], [0, 1]]]]})");
  const MatrixSystem sys = io::system_from_json(j);
  CHECK(sys.size() == 2);
  CHECK(sys.unitary(0)(1, 1) == cplx(0.0, 1.0));
  CHECK(io::system_from_json(io::to_json(sys)).unitary(0) == sys.unitary(0));
  CHECK(kind_of([] { io::operator_from_json(json::parse("[[[1,0],[0,0]]]")); }) == ErrorKind::io);
  CHECK(kind_of([] { io::system_from_json(json::parse(R"({"N": 3, "unitaries": [[[[1,0]]]]})")); }) == ErrorKind::dimension_mismatch);
}

TEST_CASE("weight sequences from values and generators") {
  const json v = json::parse(R"({"d": 2, "box": [1, 1], "values": [[1, 0], [0, 1], 2, [3, -1]]})");
  const WeightSequence a = io::weight_sequence_from_json(v);
  CHECK(a(multi_index({0, 1})) == cplx(0.0, 1.0));
  CHECK(a(multi_index({1, 1})) == cplx(3.0, -1.0));
  CHECK(io::weight_sequence_from_json(io::to_json(a)).values() == a.values());

  const json g = json::parse(R"({"box": [9], "generator": {"kind": "trigpoly", "d": 1, "terms": [{"angles": [0.25], "coeff": [1, 0]}]}})");
  const WeightSequence t = io::weight_sequence_from_json(g);
  CHECK(t(multi_index({1})) == cplx(0.0, 1.0));
  CHECK(t.has_generator());
  const WeightSequence t2 = io::weight_sequence_from_json(io::to_json(t));
  CHECK(t2.values() == t.values());

  const WeightSequence e = io::weight_sequence_from_json(json::parse(R"({"box": [10], "generator": {"kind": "example59"}})"));
  CHECK(e(multi_index({2})) == cplx(-1.0));

  CHECK(kind_of([] { io::weight_sequence_from_json(json::parse(R"({"d": 1, "box": [0], "values": []})")); }) == ErrorKind::io);
  CHECK(kind_of([] { io::weight_sequence_from_json(json::parse(R"({"d": 1, "box": [2], "values": [1, 2]})")); }) ==
        ErrorKind::dimension_mismatch);
  CHECK(kind_of([] { io::weight_sequence_from_json(json::parse(R"({"box": [2], "generator": {"kind": "chaos"}})")); }) == ErrorKind::io);
}

TEST_CASE("measures round-trip") {
  const json j = json::parse(R"({"atoms": [{"angles": [0.1], "mass": 0.3}], "density_fourier": {"box": [1], "coeffs": [[0.1, 0], [0.5, 0], [0.1, 0]]}})");
  const TorusMeasure mu = io::measure_from_json(j);
  CHECK(mu.dim() == 1);
  CHECK(mu.total_mass() == doctest::Approx(0.8));
  const TorusMeasure back = io::measure_from_json(io::to_json(mu));
  CHECK(back.atoms().size() == 1);
  CHECK(back.density()->values() == mu.density()->values());
  CHECK(kind_of([] { io::measure_from_json(json::object()); }) == ErrorKind::io);
}

TEST_CASE("correlation table csv export") {
  const WeightSequence a = WeightSequence::constant(1.0, multi_index({20, 20}));
  const CorrelationTable t = correlation_table(a, multi_index({1, 1}), {multi_index({9, 9}), multi_index({19, 19})}, 0.05);
  std::istringstream csv(io::correlation_table_csv(t));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "m1,m2,re,im,ladder_spread");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 9);
  const json j = io::to_json(t);
  CHECK(j["entries"].size() == 9);
  CHECK(j["entries"][0]["ladder"].size() == 2);
}

TEST_CASE("binary streams are little-endian complex64 behind a json header") {
  Rng rng(3);
  Eigen::VectorXcd v(12);
  for (auto& x : v) x = rng.complex_normal();
  const SampleStream s = make_stream(multi_index({2, 3}), v);
  const auto path = temp_path("stream.bin");
  io::write_stream(path, s);

  std::ifstream raw(path, std::ios::binary);
  std::string header;
  std::getline(raw, header);
  CHECK(json::parse(header)["box"] == json::array({2, 3}));
  unsigned char bytes[4];
  raw.read(reinterpret_cast<char*>(bytes), 4);
  const std::uint32_t u = bytes[0] | (bytes[1] << 8) | (bytes[2] << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
  float f;
  std::memcpy(&f, &u, 4);
  CHECK(f == static_cast<float>(v[0].real()));
  CHECK(std::filesystem::file_size(path) == header.size() + 1 + 12 * 8);

  const SampleStream back = io::read_stream(path);
  CHECK(back.n == s.n);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    CHECK(back.values[i].real() == static_cast<float>(v[i].real()));
    CHECK(back.values[i].imag() == static_cast<float>(v[i].imag()));
  }
  std::filesystem::resize_file(path, header.size() + 1 + 40);
  CHECK(kind_of([&] { io::read_stream(path); }) == ErrorKind::io);
  std::filesystem::remove(path);
}

TEST_CASE("file helpers report io errors") {
  CHECK(kind_of([] { io::read_json_file("/nonexistent/wwlab.json"); }) == ErrorKind::io);
  const auto path = temp_path("bad.json");
  io::write_text_file(path, "{not json");
  CHECK(kind_of([&] { io::read_json_file(path); }) == ErrorKind::io);
  std::filesystem::remove(path);
}

TEST_CASE("report serializations carry their key fields") {
  const OperatorArray2D a = OperatorArray2D::constant(Operator::Identity(1, 1), 4, 4, 5, 5);
  const json b = io::to_json(vdc_bound(a, 1, 1));
  CHECK(b["lhs"] == 1.0);
  CHECK(b["rhs"] == 9.0);
  CHECK(b["groups"]["mixed"] == 2.0);

  const json k = io::to_json(kronecker_decomposition(MatrixSystem::identity(2, 1)));
  CHECK(k["kronecker_rank"] == 4);
  CHECK(k["defects"]["complement_norm"].get<double>() < 1e-12);

  const json c = io::to_json(formula1_check(std::vector<cplx>{1.0, 2.0}, 1));
  CHECK(c["lhs"] == json::array({6.0, 0.0}));
}
