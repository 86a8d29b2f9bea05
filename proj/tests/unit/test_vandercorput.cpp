#include <doctest.h>

#include "wwlab/kronecker.hpp"
#include "wwlab/vandercorput.hpp"

using namespace wwlab;

namespace {

double spectral_norm(const Operator& x) { return Eigen::JacobiSVD<Operator>(x).singularValues()[0]; }

/// Bound assembled from the displayed sums, one term at a time.
double literal_rhs(const OperatorArray2D& a, std::int64_t h1, std::int64_t h2) {
  const std::int64_t n1 = a.n1(), n2 = a.n2();
  const double H = static_cast<double>((h1 + 1) * (h2 + 1));
  auto avg = [&](std::int64_t l1, std::int64_t l2, std::int64_t r1, std::int64_t r2) {
    Operator s = Operator::Zero(a.op_size(), a.op_size());
    for (std::int64_t j1 = 1; j1 <= n1; ++j1)
      for (std::int64_t j2 = 1; j2 <= n2; ++j2) s += a(j1 + l1, j2 + l2).adjoint() * a(j1 + r1, j2 + r2);
    return spectral_norm(s / static_cast<double>(n1 * n2));
  };
  double rhs = 4.0 / H * avg(0, 0, 0, 0);
  for (std::int64_t d1 = 1; d1 <= h1; ++d1) rhs += 8.0 / H * avg(0, 0, d1, 0);
  for (std::int64_t d2 = 1; d2 <= h2; ++d2) rhs += 8.0 / H * avg(0, 0, 0, d2);
  for (std::int64_t d1 = 1; d1 <= h1; ++d1)
    for (std::int64_t d2 = 1; d2 <= h2; ++d2) rhs += 8.0 / H * (avg(0, 0, d1, d2) + avg(d1, 0, 0, d2));
  return rhs;
}

}  // namespace

TEST_CASE("first summation identity by hand") {
  const std::vector<cplx> a{cplx(1.0, 2.0), cplx(-3.0, 0.5), cplx(0.25, -1.0)};
  const auto c = formula1_check(a, 1);
  const cplx expected = 2.0 * (a[0] + a[1] + a[2]);
  CHECK(std::abs(c.lhs - expected) < 1e-15);
  CHECK(std::abs(c.rhs - expected) < 1e-15);
  const auto z = formula1_check(a, 0);
  CHECK(std::abs(z.lhs - (a[0] + a[1] + a[2])) < 1e-15);
  CHECK(z.deviation < 1e-15);
  CHECK(formula1_check(a, 5).outside_hypothesis);
}

TEST_CASE("first summation identity on random operators") {
  Rng rng(10);
  std::vector<Operator> ops;
  for (int i = 0; i < 8; ++i) ops.push_back(rng.gaussian_matrix(2, 2));
  CHECK(formula1_check(ops, 3).deviation < 1e-12);
}

TEST_CASE("second summation identity on all-ones and diagonal arrays") {
  const std::vector<std::vector<cplx>> ones(2, std::vector<cplx>(2, 1.0));
  const auto c = formula2_check(ones, 1);
  // windows {1}, {1,2}, {2} give 1 + 4 + 1
  CHECK(c.lhs == cplx(6.0));
  CHECK(c.rhs == cplx(6.0));

  std::vector<std::vector<cplx>> diag(5, std::vector<cplx>(5, 0.0));
  cplx trace = 0.0;
  for (int j = 0; j < 5; ++j) trace += diag[j][j] = cplx(j + 1.0, -j);
  const auto d = formula2_check(diag, 2);
  CHECK(std::abs(d.lhs - 3.0 * trace) < 1e-13);
  CHECK(std::abs(d.rhs - 3.0 * trace) < 1e-13);
}

TEST_CASE("second summation identity on random operator arrays") {
  Rng rng(11);
  std::vector<std::vector<Operator>> arr(6, std::vector<Operator>(6));
  for (auto& row : arr)
    for (auto& x : row) x = rng.gaussian_matrix(3, 3);
  for (std::int64_t h = 0; h <= 6; ++h) CHECK(formula2_check(arr, h).deviation < 1e-12);
  CHECK_THROWS_AS(formula2_check(std::vector<std::vector<cplx>>{{1.0, 2.0}}, 1), Error);
}

TEST_CASE("all-identity array gives lhs 1 and rhs 9") {
  const OperatorArray2D a = OperatorArray2D::constant(Operator::Identity(1, 1), 4, 4, 5, 5);
  const VdcBound b = vdc_bound(a, 1, 1);
  CHECK(b.lhs == 1.0);
  CHECK(b.rhs == 9.0);
  CHECK(b.H == 4.0);
  CHECK(b.diagonal_group == 1.0);
  CHECK(b.shift1_group == 2.0);
  CHECK(b.shift2_group == 2.0);
  CHECK(b.joint_group == 2.0);
  CHECK(b.mixed_group == 2.0);
  CHECK_FALSE(b.outside_hypothesis);
  // without entries beyond n the shifted averages lose their boundary rows
  const VdcBound p = vdc_bound(a.padded(), 1, 1);
  CHECK(p.rhs < 9.0);
  CHECK(p.lhs <= p.rhs);
}

TEST_CASE("zero array bound is zero") {
  const VdcBound b = vdc_bound(OperatorArray2D(2, 4, 4, 5, 5), 1, 1);
  CHECK(b.lhs == 0.0);
  CHECK(b.rhs == 0.0);
}

TEST_CASE("bound matches the literal sums") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto N = static_cast<Eigen::Index>(rng.integer(1, 3));
    const std::int64_t n1 = rng.integer(1, 6), n2 = rng.integer(1, 6);
    const OperatorArray2D a = OperatorArray2D::random(rng, N, n1, n2, n1 + 3, n2 + 3);
    const std::int64_t h1 = rng.integer(0, std::min<std::int64_t>(n1, 3)), h2 = rng.integer(0, std::min<std::int64_t>(n2, 3));
    const VdcBound b = vdc_bound(a, h1, h2);
    CHECK(b.rhs == doctest::Approx(literal_rhs(a, h1, h2)).epsilon(1e-12));
    Operator s = Operator::Zero(N, N);
    for (std::int64_t j1 = 1; j1 <= n1; ++j1)
      for (std::int64_t j2 = 1; j2 <= n2; ++j2) s += a(j1, j2);
    CHECK(b.lhs == doctest::Approx(std::pow(spectral_norm(s / static_cast<double>(n1 * n2)), 2)).epsilon(1e-12));
    CHECK(b.lhs <= b.rhs + 1e-10);
  }
}

TEST_CASE("shift table reuse gives the same bounds") {
  Rng rng(14);
  const OperatorArray2D a = OperatorArray2D::random(rng, 2, 5, 4, 8, 7);
  const VdcShiftTable t = vdc_shift_table(a, 3, 3);
  for (std::int64_t h1 = 0; h1 <= 3; ++h1)
    for (std::int64_t h2 = 0; h2 <= 3; ++h2) CHECK(vdc_bound(t, 5, 4, h1, h2).rhs == doctest::Approx(vdc_bound(a, h1, h2).rhs));
  CHECK_THROWS_AS(vdc_bound(t, 5, 4, 4, 0), Error);
}

TEST_CASE("default fuzz campaign finds no violations") {
  const VdcFuzzReport r = vdc_fuzz(VdcFuzzConfig{});
  CHECK(r.violations == 0);
  CHECK(r.checks > 1000);
  CHECK(r.outside_hypothesis == 0);
  CHECK(r.zero_lhs == 0.0);
  CHECK(r.zero_rhs == 0.0);
  CHECK(r.min_slack >= -1e-10);
}

TEST_CASE("fuzz with shifts beyond n flags those runs") {
  VdcFuzzConfig c;
  c.trials = 30;
  c.max_n1 = c.max_n2 = 4;
  c.h_policy = "beyond";
  const VdcFuzzReport r = vdc_fuzz(c);
  CHECK(r.outside_hypothesis > 0);
  CHECK(!r.flagged.empty());
  for (const auto& f : r.flagged) CHECK((f.h1 > f.n1 || f.h2 > f.n2));
  c.h_policy = "sideways";
  CHECK_THROWS_AS(vdc_fuzz(c), Error);
}

TEST_CASE("bound applied to twisted averages") {
  const MatrixSystem id = MatrixSystem::identity(2, 2);
  const WwProofReport zero = vdc_apply_wwproof(id, Operator::Zero(2, 2), Projection::identity(2), multi_index({6, 6}),
                                               multi_index({2, 2}), multi_index({8, 8}));
  CHECK(zero.grid_sup_squared == 0.0);
  CHECK(zero.extended.rhs == 0.0);

  const WwProofReport one = vdc_apply_wwproof(id, Operator::Identity(2, 2), Projection::identity(2), multi_index({6, 6}),
                                              multi_index({2, 2}), multi_index({8, 8}));
  CHECK(one.grid_sup_squared == doctest::Approx(1.0));
  CHECK(one.argmax.approx_equal(TorusPoint::identity(2)));
  CHECK(one.extended.rhs >= 1.0);
  CHECK_FALSE(one.violation);

  Rng rng(15);
  for (int trial = 0; trial < 3; ++trial) {
    const MatrixSystem sys = random_commuting_system(3, 2, rng);
    const Operator x = rng.gaussian_matrix(3, 3);
    const Projection e = Projection::onto(rng.haar_unitary(3).leftCols(2));
    const WwProofReport r = vdc_apply_wwproof(sys, x, e, multi_index({32, 32}), multi_index({4, 4}), multi_index({64, 64}));
    CHECK_FALSE(r.violation);
    CHECK(r.grid_sup_squared <= r.extended.rhs + 1e-8);
  }
}
