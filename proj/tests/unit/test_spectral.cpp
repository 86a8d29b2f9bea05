#include <doctest.h>

#include "wwlab/rng.hpp"
#include "wwlab/spectral.hpp"

#include <numbers>

using namespace wwlab;

namespace {

WeightSequence character(double angle, std::int64_t extent) {
  return WeightSequence::from_generator(TrigPolynomial(1, {{TorusPoint::from_angles({angle}), 1.0}}), multi_index({extent}));
}

TorusMeasure two_atoms(double u, double v) {
  return TorusMeasure(1, {{TorusPoint::from_angles({u}), 0.3}, {TorusPoint::from_angles({v}), 0.7}});
}

FourierCoefficients moments(const TorusMeasure& mu, const MultiIndex& h) {
  FourierCoefficients c = FourierCoefficients::zeros(h);
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& m) { c.ref(m) = fourier_stieltjes(mu, m); });
  return c;
}

}  // namespace

TEST_CASE("empirical density of the constant sequence at n = 1") {
  const EmpiricalDensity e = empirical_density(WeightSequence::constant(1.0, multi_index({1})), multi_index({1}));
  CHECK(std::abs(e.fourier.at(multi_index({0})) - 1.0) < 1e-15);
  CHECK(std::abs(e.fourier.at(multi_index({1})) - 0.5) < 1e-15);
  CHECK(std::abs(e.fourier.at(multi_index({-1})) - 0.5) < 1e-15);
  for (double t : {0.0, 0.1, 0.5, 0.8}) {
    const TorusPoint z = TorusPoint::from_angles({t});
    const double expected = std::norm(1.0 + std::conj(z.coordinate(0))) / 2.0;
    CHECK(e(z) == doctest::Approx(expected));
    CHECK(e.from_coefficients(z) == doctest::Approx(expected));
  }
}

TEST_CASE("empirical density of a character has unit mass") {
  for (std::int64_t n : {0, 5, 63}) {
    const EmpiricalDensity e = empirical_density(character(0.37, n), multi_index({n}));
    CHECK(e.total_mass() == doctest::Approx(1.0));
  }
  const EmpiricalDensity z = empirical_density(WeightSequence::constant(0.0, multi_index({7})), multi_index({7}));
  CHECK(z.fourier.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fft and direct empirical densities agree") {
  Rng rng(4);
  const MultiIndex n = multi_index({6, 4});
  Eigen::VectorXcd v(static_cast<Eigen::Index>(box_volume(n)));
  for (auto& x : v) x = rng.complex_normal();
  const WeightSequence a = WeightSequence::from_values(n, v);
  const EmpiricalDensity f = empirical_density(a, n), d = empirical_density_direct(a, n);
  CHECK((f.fourier.values() - d.fourier.values()).cwiseAbs().maxCoeff() < 1e-12);
  for (const auto& z : {TorusPoint::from_angles({0.1, 0.2}), TorusPoint::from_angles({0.9, 0.45})})
    CHECK(f(z) == doctest::Approx(f.from_coefficients(z)).epsilon(1e-10));
}

TEST_CASE("fourier-stieltjes coefficients") {
  const TorusPoint z = TorusPoint::from_angles({0.2, 0.45});
  const MultiIndex m = multi_index({3, -1});
  CHECK(std::abs(fourier_stieltjes(TorusMeasure::dirac(z), m) - z.power(m)) < 1e-14);
  CHECK(fourier_stieltjes(TorusMeasure::haar(2), multi_index({0, 0})) == cplx(1.0));
  CHECK(fourier_stieltjes(TorusMeasure::haar(2), m) == cplx(0.0));
  const TorusMeasure mix = two_atoms(0.1, 0.4);
  const cplx expected = 0.3 * unit_root(0.5) + 0.7 * unit_root(0.2 * 5);
  CHECK(std::abs(fourier_stieltjes(mix, multi_index({5})) - expected) < 1e-13);
}

TEST_CASE("measures validate their inputs") {
  CHECK_THROWS_AS(TorusMeasure(1, {{TorusPoint::from_angles({0.1}), -0.5}}), Error);
  CHECK_THROWS_AS(TorusMeasure(2, {{TorusPoint::from_angles({0.1}), 0.5}}), Error);
}

TEST_CASE("point masses of simple measures") {
  const TorusPoint z = TorusPoint::from_angles({0.3});
  for (std::int64_t n : {1, 10, 100}) {
    const MultiIndex h = multi_index({n});
    CHECK(point_mass(moments(TorusMeasure::dirac(z), h), z, h).mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(point_mass(moments(TorusMeasure::haar(1), h), z, h).mass == doctest::Approx(1.0 / (2.0 * n + 1.0)));
  }
  // u = 1/8, v = 5/8: the other atom's Dirichlet leakage vanishes when 2h+1 is odd and v-u = 1/2
  const TorusMeasure mix = two_atoms(0.125, 0.625);
  for (std::int64_t n : {16, 64, 256}) {
    const MultiIndex h = multi_index({n});
    const double pm = point_mass(moments(mix, h), TorusPoint::from_angles({0.125}), h).mass;
    CHECK(std::abs(pm - 0.3) <= 0.7 / (2.0 * n + 1.0) + 1e-12);
  }
}

TEST_CASE("wiener averages of simple measures") {
  const MultiIndex h = multi_index({40});
  CHECK(std::abs(wiener_continuity(moments(TorusMeasure::dirac(TorusPoint::from_angles({0.77})), h), h) - 1.0) < 1e-12);
  CHECK(wiener_continuity(moments(TorusMeasure::haar(1), h), h) == 1.0 / 81.0);
  const MultiIndex big = multi_index({512});
  CHECK(std::abs(wiener_continuity(moments(two_atoms(0.1, 0.4), big), big) - 0.58) < 0.01);
  const WienerLadder w = wiener_ladder(moments(TorusMeasure::haar(1), big), {multi_index({8}), multi_index({64}), big}, 0.05);
  CHECK(w.empirically_continuous);
  CHECK(w.values[2] == 1.0 / 1025.0);
}

TEST_CASE("affinity of atomic measures") {
  const TorusPoint u = TorusPoint::from_angles({0.1}), v = TorusPoint::from_angles({0.3}), w = TorusPoint::from_angles({0.6});
  CHECK(affinity(TorusMeasure::dirac(u), TorusMeasure::dirac(u)).value == doctest::Approx(1.0));
  CHECK(affinity(TorusMeasure::dirac(u), TorusMeasure::haar(1)).value == doctest::Approx(0.0));
  const TorusMeasure P(1, {{u, 0.5}, {v, 0.5}}), Q(1, {{u, 0.5}, {w, 0.5}});
  CHECK(affinity(P, Q).value == doctest::Approx(0.5));
}

TEST_CASE("affinity of densities") {
  CHECK(affinity(TorusMeasure::haar(1), TorusMeasure::haar(1)).value == doctest::Approx(1.0).epsilon(1e-8));
  FourierCoefficients f = FourierCoefficients::zeros(multi_index({1}));
  f.ref(multi_index({0})) = 1.0;
  f.ref(multi_index({1})) = 0.5;
  f.ref(multi_index({-1})) = 0.5;
  const TorusMeasure cosine(1, {}, f);
  // integral of sqrt(1 + cos(2 pi t)) = sqrt(2) * 2 / pi
  const AffinityResult r = affinity(cosine, TorusMeasure::haar(1));
  CHECK(r.value == doctest::Approx(2.0 * std::numbers::sqrt2 / std::numbers::pi).epsilon(1e-5));
  CHECK(r.converged);
}

TEST_CASE("affinity of character sequences") {
  const WeightSequence a = character(0.25, 63), b = character(0.5, 63);
  const auto r = affinity_sequences(a, b, {multi_index({15}), multi_index({31}), multi_index({63})},
                                    TorusMeasure::dirac(TorusPoint::from_angles({0.25})),
                                    TorusMeasure::dirac(TorusPoint::from_angles({0.5})), 1e-12);
  CHECK(r.values.cwiseAbs().maxCoeff() < 1e-14);
  REQUIRE(r.bound.has_value());
  CHECK(*r.bound == doctest::Approx(0.0));
  CHECK_FALSE(r.violation);

  const auto same = affinity_sequences(a, a, {multi_index({63})}, std::nullopt, std::nullopt, 1e-12);
  CHECK(same.values[0] == doctest::Approx(1.0));
}

TEST_CASE("point bound for characters and noise") {
  const WeightSequence a = character(0.2, 4200);
  const auto r = ww_pointbound(a, TorusPoint::from_angles({0.2}), geometric_ladder(multi_index({4000}), 3), multi_index({100}), 0.02);
  CHECK(r.amplitude[2] == doctest::Approx(1.0));
  // the window [0, n] loses |m| terms at negative lags only
  double lost = 0.0;
  for (int m = 1; m <= 100; ++m) lost += m;
  CHECK(r.point_mass[2] == doctest::Approx(1.0 - lost / (201.0 * 4001.0)).epsilon(1e-9));
  CHECK_FALSE(r.violation);

  Rng rng(77);
  Eigen::VectorXcd v(8192);
  for (auto& x : v) x = rng.sign();
  const WeightSequence noise = WeightSequence::from_values(multi_index({8191}), v);
  const auto rn = ww_pointbound(noise, TorusPoint::from_angles({0.3}), geometric_ladder(multi_index({8000}), 3), multi_index({64}), 0.02);
  CHECK_FALSE(rn.violation);
  CHECK(rn.amplitude[2] < 0.05);
}

TEST_CASE("empirical measures of a character converge weakly to the point mass") {
  const double t = 0.15;
  const WeightSequence a = character(t, 256);
  std::vector<TorusPolynomial> fs;
  for (std::int64_t m = -3; m <= 3; ++m) fs.push_back(TorusPolynomial::monomial(multi_index({m})));
  const std::vector<MultiIndex> ladder{multi_index({16}), multi_index({64}), multi_index({256})};
  const auto r = weak_convergence_check(a, TorusMeasure::dirac(TorusPoint::from_angles({t})), fs, ladder);
  for (std::size_t f = 0; f < fs.size(); ++f) {
    const std::int64_t m = static_cast<std::int64_t>(f) - 3;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const double n = static_cast<double>(ladder[i][0]);
      const cplx expected = (n + 1.0 - std::abs(static_cast<double>(m))) / (n + 1.0) * unit_root(t * static_cast<double>(m));
      CHECK(std::abs(r.pairings(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) - expected) < 1e-12);
    }
  }
  CHECK(r.max_discrepancy <= 3.0 / 257.0 + 1e-12);

  const auto z = weak_convergence_check(WeightSequence::constant(0.0, multi_index({256})), TorusMeasure::zero(1), fs, ladder);
  CHECK(z.pairings.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("integration against measures") {
  const TorusPoint z = TorusPoint::from_angles({0.4});
  TorusPolynomial f{{{multi_index({2}), 2.0}, {multi_index({-1}), cplx(0.0, 1.0)}}};
  CHECK(std::abs(integrate(f, TorusMeasure::dirac(z)) - f(z)) < 1e-14);
  CHECK(std::abs(integrate(f, TorusMeasure::haar(1))) < 1e-15);
}
