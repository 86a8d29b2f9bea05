#include <doctest.h>

#include "wwlab/besicovitch.hpp"
#include "wwlab/rng.hpp"

using namespace wwlab;

namespace {

ClassificationConfig default_config(int d) {
  ClassificationConfig c;
  c.candidates = root_of_unity_grid(d, 16);
  return c;
}

}  // namespace

TEST_CASE("root of unity grid") {
  const auto g = root_of_unity_grid(2, 4);
  REQUIRE(g.size() == 16);
  CHECK(g[0].approx_equal(TorusPoint::identity(2)));
  CHECK(g[5].approx_equal(TorusPoint::from_angles({0.25, 0.25})));
}

TEST_CASE("fejer point mass of a single atom is one at the atom") {
  const TorusPoint z = TorusPoint::from_angles({0.3});
  const MultiIndex h = multi_index({20});
  FourierCoefficients c = FourierCoefficients::zeros(h);
  for (std::int64_t m = -20; m <= 20; ++m) c.ref(multi_index({m})) = z.power(multi_index({m}));
  CHECK(fejer_point_mass(c, z, h) == doctest::Approx(1.0));
  // Fejer kernel at the antipode of a 21-point window: sin^2(21 pi/2) / (21^2 sin^2(pi/2)) = 1/441
  CHECK(fejer_point_mass(c, TorusPoint::from_angles({0.8}), h) == doctest::Approx(1.0 / 441.0).epsilon(1e-9));
}

TEST_CASE("trigonometric polynomial is consistent with atoms at its frequencies") {
  const TrigPolynomial p(1, {{TorusPoint::from_angles({0.1}), 0.6},
                             {TorusPoint::from_angles({0.35}), cplx(0.0, 0.5)},
                             {TorusPoint::from_angles({0.7}), cplx(-0.4, 0.2)}});
  const WeightSequence a = WeightSequence::from_generator(p, multi_index({4095}));
  const ClassificationReport r = classify_besicovitch(a, default_config(1));
  CHECK(r.verdict == Verdict::consistent);
  REQUIRE(r.atoms.size() == 3);
  for (const auto& t : p.terms()) {
    bool matched = false;
    for (const auto& atom : r.atoms)
      if (atom.point.distance(t.frequency) < 0.01) {
        matched = true;
        CHECK(std::abs(atom.mass - std::norm(t.coefficient)) < 0.02);
        CHECK(std::abs(std::norm(atom.amplitude.ladder[atom.amplitude.ladder.size() - 1]) - std::norm(t.coefficient)) < 0.02);
      }
    CHECK(matched);
  }
  CHECK(r.mass_deficit < 0.05);
}

TEST_CASE("zero sequence is consistent") {
  const ClassificationReport r = classify_besicovitch(WeightSequence::constant(0.0, multi_index({600})), default_config(1));
  CHECK(r.verdict == Verdict::consistent);
  CHECK(r.atoms.empty());
}

TEST_CASE("log-band sign sequence is never consistent") {
  const WeightSequence a = WeightSequence::from_generator(example59(1), multi_index({100000}));
  const ClassificationReport r = classify_besicovitch(a, default_config(1));
  CHECK((r.verdict == Verdict::fails_3 || r.verdict == Verdict::inconclusive_2));
  bool has_one = false;
  for (const auto& atom : r.atoms)
    if (atom.point.approx_equal(TorusPoint::identity(1), 1e-3)) {
      has_one = true;
      CHECK(atom.mass >= 0.8);
    }
  CHECK(has_one);
}

TEST_CASE("bounded noise fails condition (1)") {
  Rng rng(5);
  Eigen::VectorXcd v(16384);
  for (auto& x : v) x = rng.sign();
  const WeightSequence a = WeightSequence::from_values(multi_index({16383}), v);
  const ClassificationReport r = classify_besicovitch(a, default_config(1));
  CHECK(r.verdict == Verdict::fails_1);
  CHECK(r.wiener_value < 0.05);
  CHECK(r.atoms.empty());
}

TEST_CASE("two-dimensional product character is consistent") {
  const TrigPolynomial p(2, {{TorusPoint::from_angles({0.2, 0.6}), 1.0}});
  const WeightSequence a = WeightSequence::from_generator(p, multi_index({1000, 1000}));
  const ClassificationReport r = classify_besicovitch(a, default_config(2));
  CHECK(r.verdict == Verdict::consistent);
  REQUIRE(r.atoms.size() == 1);
  CHECK(r.atoms[0].point.distance(TorusPoint::from_angles({0.2, 0.6})) < 1e-6);
}

TEST_CASE("classification rejects an empty candidate list") {
  ClassificationConfig c;
  CHECK_THROWS_AS(classify_besicovitch(WeightSequence::constant(1.0, multi_index({300})), c), Error);
}

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::fails_1) == "fails-(1)");
  CHECK(to_string(Verdict::inconclusive_2) == "inconclusive-(2)");
}
