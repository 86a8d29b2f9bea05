#include <doctest.h>

#include "wwlab/bochner_fejer.hpp"
#include "wwlab/rng.hpp"
#include "wwlab/weights.hpp"

#include <cmath>

using namespace wwlab;

namespace {

WeightSequence character(double angle, std::int64_t extent) {
  return WeightSequence::from_generator(TrigPolynomial(1, {{TorusPoint::from_angles({angle}), 1.0}}), multi_index({extent}));
}

double example59_oracle(std::int64_t k) { return (static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(k + 1)))) % 2 == 0) ? 1.0 : -1.0; }

TrigPolynomial random_trig(Rng& rng, int d, int atoms) {
  std::vector<TrigTerm> terms;
  while (static_cast<int>(terms.size()) < atoms) {
    Eigen::VectorXd a(d);
    for (int j = 0; j < d; ++j) a[j] = rng.uniform();
    TorusPoint z(a);
    bool far = true;
    for (const auto& t : terms) far = far && t.frequency.distance(z) >= 0.05;
    if (far) terms.push_back({z, rng.complex_normal() / 2.0});
  }
  return TrigPolynomial(d, std::move(terms));
}

}  // namespace

TEST_CASE("log-band sign sequence values") {
  const Example59 a{1};
  CHECK(a(multi_index({0})) == cplx(1.0));
  CHECK(a(multi_index({2})) == cplx(-1.0));
  CHECK(Example59{2}(multi_index({1, 1})) == cplx(-1.0));
  CHECK(a(multi_index({-1})) == cplx(0.0));
  for (std::int64_t k = 0; k < 3000; ++k) CHECK(a(multi_index({k})).real() == example59_oracle(k));
}

TEST_CASE("weight sequences index their box") {
  const WeightSequence a = WeightSequence::from_values(multi_index({-1, 2}), multi_index({1, 1}),
                                                       Eigen::VectorXcd::LinSpaced(4, 1.0, 4.0));
  CHECK(a(multi_index({-1, 2})) == cplx(1.0));
  CHECK(a(multi_index({-1, 3})) == cplx(2.0));
  CHECK(a(multi_index({0, 3})) == cplx(4.0));
  CHECK(a(multi_index({1, 3})) == cplx(0.0));
  CHECK(a.sup_norm() == 4.0);
  CHECK_THROWS_AS(WeightSequence::from_values(multi_index({2}), Eigen::VectorXcd::Zero(2)), Error);
}

TEST_CASE("correlation of the constant sequence is exactly one") {
  const WeightSequence one = WeightSequence::constant(1.0, multi_index({12}));
  CHECK(correlation_estimate(one, multi_index({2}), multi_index({10})) == cplx(1.0));
}

TEST_CASE("correlation of i^k is i^m at every truncation") {
  for (std::int64_t n : {0, 1, 7, 100})
    for (std::int64_t m = 0; m <= 5; ++m) {
      const WeightSequence a = character(0.25, n + m);
      const cplx expected = std::pow(cplx(0.0, 1.0), static_cast<int>(m));
      CHECK(std::abs(correlation_estimate(a, multi_index({m}), multi_index({n})) - expected) < 1e-14);
    }
}

TEST_CASE("log-band sign sequence: correlation at m = 3 against a brute-force sum") {
  const std::int64_t n = 100000, m = 3;
  const WeightSequence a = WeightSequence::from_generator(example59(1), multi_index({n + m}));
  double oracle = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) oracle += example59_oracle(k) * example59_oracle(k + m);
  oracle /= static_cast<double>(n + 1);
  const cplx est = correlation_estimate(a, multi_index({m}), multi_index({n}));
  CHECK(est.real() == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(std::abs(est - 1.0) < 0.05);
}

TEST_CASE("two-atom correlation table approaches the closed form") {
  const TrigPolynomial p(1, {{TorusPoint::from_angles({0.0}), 0.6}, {TorusPoint::from_angles({0.3}), cplx(0.0, 0.8)}});
  const std::int64_t n = 2000;
  const WeightSequence a = WeightSequence::from_generator(p, multi_index({n + 8}));
  const auto ladder = geometric_ladder(multi_index({n}), 3);
  const CorrelationTable t = correlation_table(a, multi_index({8}), ladder, 0.05);
  const double bound = 5.0 * 0.6 * 0.8 * 2.0 / (0.3 * static_cast<double>(n));
  for (std::int64_t m = -8; m <= 8; ++m) {
    const cplx expected = 0.36 + 0.64 * TorusPoint::from_angles({0.3}).power(multi_index({m}));
    CHECK(std::abs(t.at(multi_index({m})) - expected) < bound);
    CHECK(std::abs(t.at(multi_index({m})) - p.correlation(multi_index({m}))) < bound);
  }
  CHECK(t.appears_in_S);
  // the one-sided windows differ in at most 2|m| terms
  CHECK(t.max_hermitian_defect() <= 2.0 * 8.0 * 1.96 / static_cast<double>(n + 1));
}

TEST_CASE("zero sequence correlations vanish and appear in S") {
  const WeightSequence z = WeightSequence::constant(0.0, multi_index({40, 40}));
  const CorrelationTable t = correlation_table(z, multi_index({2, 2}), geometric_ladder(multi_index({38, 38}), 3), 0.05);
  CHECK(t.entries.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.appears_in_S);
}

TEST_CASE("fft correlation block agrees with the direct sum") {
  Rng rng(8);
  const MultiIndex ext = multi_index({20, 13});
  Eigen::VectorXcd v(static_cast<Eigen::Index>(box_volume(ext)));
  for (auto& x : v) x = rng.complex_normal();
  const WeightSequence a = WeightSequence::from_values(ext, v);
  const MultiIndex n = multi_index({15, 9}), h = multi_index({3, 2});
  const FourierCoefficients block = correlation_block(a, n, h);
  for_each_in_box((-h).eval(), h, [&](const MultiIndex& m) {
    CHECK(std::abs(block.at(m) - correlation_estimate(a, m, n)) < 1e-12);
  });
}

TEST_CASE("correlation table is Hermitian on random sequences") {
  Rng rng(21);
  Eigen::VectorXcd v(301);
  for (auto& x : v) x = cplx(rng.sign(), 0.0);
  const WeightSequence a = WeightSequence::from_values(multi_index({300}), v);
  const CorrelationTable t = correlation_table(a, multi_index({10}), geometric_ladder(multi_index({290}), 4), 0.05);
  for (std::int64_t m = 0; m <= 10; ++m) {
    const double defect = std::abs(t.at(multi_index({m})) - std::conj(t.at(multi_index({-m}))));
    CHECK(defect <= 2.0 * static_cast<double>(m) / 291.0 + 1e-12);
  }
  CHECK(t.max_hermitian_defect() < t.tolerance);
}

TEST_CASE("marcinkiewicz seminorm counts the zero extension") {
  const WeightSequence one = WeightSequence::constant(1.0, multi_index({9}));
  CHECK(marcinkiewicz_seminorm(one, 1.0, multi_index({9})) == doctest::Approx(1.0));
  const WeightSequence full = WeightSequence::from_values(multi_index({-9}), multi_index({18}), Eigen::VectorXcd::Ones(19));
  CHECK(marcinkiewicz_seminorm(full, 1.0, multi_index({9})) == doctest::Approx(1.9));
  const WeightSequence e = WeightSequence::from_generator(example59(1), multi_index({5000}));
  CHECK(marcinkiewicz_seminorm(e, kSupremumExponent, multi_index({5000})) == 1.0);
  CHECK_THROWS_AS(marcinkiewicz_seminorm(one, 0.5, multi_index({9})), Error);
}

TEST_CASE("semi-inner products of characters") {
  const WeightSequence a = character(0.25, 7);
  CHECK(std::abs(semi_inner_product(a, a, multi_index({7})) - 1.0) < 1e-15);
  const WeightSequence b = character(0.5, 7);
  CHECK(std::abs(semi_inner_product(a, b, multi_index({7}))) < 1e-15);
}

TEST_CASE("translation shifts the support and inverts") {
  Rng rng(2);
  Eigen::VectorXcd v(12);
  for (auto& x : v) x = rng.complex_normal();
  const WeightSequence A = WeightSequence::from_values(multi_index({2, 3}), v);
  const WeightSequence same = translate(A, multi_index({0, 0}));
  CHECK(same.values() == A.values());
  const MultiIndex m = multi_index({1, -2});
  const WeightSequence B = translate(A, m);
  const WeightSequence back = translate(B, (-m).eval());
  for_each_in_box(multi_index({-3, -3}), multi_index({4, 5}), [&](const MultiIndex& k) {
    CHECK(B(k) == A((k + m).eval()));
    CHECK(back(k) == A(k));
  });
  // finite-n seminorm changes by at most the boundary count
  const WeightSequence e = WeightSequence::from_generator(example59(1), multi_index({4000}));
  const MultiIndex n = multi_index({2000}), shift = multi_index({7});
  const double s0 = marcinkiewicz_seminorm(e, 2.0, n), s1 = marcinkiewicz_seminorm(translate(e, shift), 2.0, n);
  CHECK(std::abs(s0 * s0 - s1 * s1) <= 7.0 / 2001.0 + 1e-12);
}

TEST_CASE("amplitudes of characters") {
  const WeightSequence a = character(0.3, 50);
  for (std::int64_t n : {0, 9, 50}) CHECK(std::abs(amplitude_estimate(a, TorusPoint::from_angles({0.3}), multi_index({n})) - 1.0) < 1e-13);
  const WeightSequence b = character(0.25, 11);
  CHECK(std::abs(amplitude_estimate(b, TorusPoint::from_angles({0.75}), multi_index({11}))) < 1e-15);
}

TEST_CASE("log-band sign sequence: amplitude at 1 oscillates at band ends") {
  const WeightSequence a = WeightSequence::from_generator(example59(1), multi_index({200000}));
  double previous = 0.0;
  for (int J = 8; J <= 12; ++J) {
    const auto n = static_cast<std::int64_t>(std::exp(static_cast<double>(J))) - 1;
    double oracle = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) oracle += example59_oracle(k);
    oracle /= static_cast<double>(n + 1);
    const double v = amplitude_estimate(a, TorusPoint::identity(1), multi_index({n})).real();
    CHECK(v == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::abs(v) > 0.4);
    CHECK(std::abs(v) < 0.52);
    if (J > 8) CHECK(v * previous < 0.0);
    previous = v;
  }
}

TEST_CASE("geometric ladders end at the top box") {
  const auto l = geometric_ladder(multi_index({64, 32}), 5);
  REQUIRE(l.size() == 5);
  CHECK(l.front() == multi_index({4, 2}));
  CHECK(l.back() == multi_index({64, 32}));
  CHECK_NOTHROW(validate_ladder(l, 2));
  CHECK_THROWS_AS(validate_ladder({multi_index({4}), multi_index({2})}, 1), Error);
}

TEST_CASE("bochner-fejer kernel small cases") {
  const double beta = std::sqrt(2.0) - 1.0;
  const BochnerFejerSpec one({{{1}, {beta}}});
  for (std::int64_t t : {0, 1, 5, -3}) CHECK(std::abs(bochner_fejer_kernel_eval(one, multi_index({t})) - 1.0) < 1e-14);
  const BochnerFejerSpec two({{{2}, {beta}}});
  CHECK(std::abs(bochner_fejer_kernel_eval(two, multi_index({0})) - 2.0) < 1e-14);
  const BochnerFejerSpec mixed({{{2, 3}, {beta, std::sqrt(3.0) - 1.0}}, {{2}, {0.2}}});
  for_each_in_box(multi_index({-3, -3}), multi_index({3, 3}), [&](const MultiIndex& t) {
    CHECK(std::abs(bochner_fejer_kernel_eval(mixed, t) - bochner_fejer_kernel_direct(mixed, t)) < 1e-12);
  });
  CHECK(mixed.weight(0, multi_index({1, -2})) == doctest::Approx(0.5 / 3.0));
}

TEST_CASE("bochner-fejer convolution of a character keeps weight one half") {
  const double beta = std::sqrt(2.0) - 1.0;
  const BochnerFejerSpec spec({{{2}, {beta}}});
  const WeightSequence a = character(beta, 20000);
  const TrigPolynomial p = bochner_fejer_convolve(spec, a, multi_index({20000}));
  bool found = false;
  for (const auto& t : p.terms()) {
    if (t.frequency.approx_equal(TorusPoint::from_angles({beta}))) {
      CHECK(std::abs(t.coefficient - 0.5) < 1e-12);
      found = true;
    } else {
      CHECK(std::abs(t.coefficient) < 1e-3);
    }
  }
  CHECK(found);

  const TrigPolynomial zero = bochner_fejer_convolve(spec, WeightSequence::constant(0.0, multi_index({100})), multi_index({100}));
  for (const auto& t : zero.terms()) CHECK(t.coefficient == cplx(0.0));
}

TEST_CASE("bochner-fejer convolution does not increase the sup norm") {
  Rng rng(99);
  const BochnerFejerSpec spec({{{3, 2}, {std::sqrt(2.0) - 1.0, std::sqrt(5.0) - 2.0}}});
  for (int trial = 0; trial < 10; ++trial) {
    const TrigPolynomial p = random_trig(rng, 1, 3);
    const WeightSequence a = WeightSequence::from_generator(p, multi_index({3000}));
    const TrigPolynomial q = bochner_fejer_convolve(spec, a, multi_index({3000}));
    double sup_q = 0.0;
    for (std::int64_t k = 0; k <= 3000; ++k) sup_q = std::max(sup_q, std::abs(q(multi_index({k}))));
    CHECK(sup_q <= a.sup_norm() + 1e-9);
  }
}
