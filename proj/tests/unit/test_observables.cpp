#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "twocolor/error.hpp"
#include "twocolor/observables.hpp"

using namespace twocolor;
using fixtures::ocs_run;

TEST(Observables, BasisStateExpectations) {
  const BasisSpec b{0, 10, 3};
  EXPECT_NEAR(expectation_cos_k(basis_state(b, 0), 1, b), 0.0, 1e-16);
  EXPECT_NEAR(expectation_cos_k(basis_state(b, 0), 2, b), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(expectation_cos_k(basis_state(b, 1), 2, b), 0.6, 1e-15);
  const BasisSpec b1{1, 10, 3};
  EXPECT_NEAR(expectation_cos_k(basis_state(b1, 1), 2, b1), 0.2, 1e-15);
}

TEST(Observables, SuperpositionOrientation) {
  const BasisSpec b{0, 5, 3};
  WaveFunction psi = basis_state(b, 0);
  psi.coefficients(0) = 1.0 / std::sqrt(2.0);
  psi.coefficients(1) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(expectation_cos_k(psi, 1, b), 1.0 / std::sqrt(3.0), 1e-15);
  psi.coefficients(1) *= -1.0;
  EXPECT_NEAR(expectation_cos_k(psi, 1, b), -1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Observables, RandomStatesStayInRange) {
  const BasisSpec b{2, 20, 3};
  const RotorOperators ops = build_rotor_operators(b);
  for (int trial = 0; trial < 200; ++trial) {
    WaveFunction psi;
    psi.M = 2;
    psi.coefficients = Eigen::VectorXcd::Random(b.dim());
    psi.coefficients.normalize();
    const double c1 = expectation_cos_k(psi, 1, ops);
    const double c2 = expectation_cos_k(psi, 2, ops);
    const double c3 = expectation_cos_k(psi, 3, ops);
    EXPECT_LE(std::abs(c1), 1.0);
    EXPECT_GE(c2, 0.0);
    EXPECT_LE(c2, 1.0);
    EXPECT_LE(c1 * c1, c2 + 1e-15);
    EXPECT_LE(std::abs(c3), 1.0);
  }
}

TEST(Observables, DimensionMismatch) {
  const BasisSpec b{0, 5, 3};
  EXPECT_THROW(expectation(cos_matrix(b), Eigen::VectorXcd::Zero(3)), InvalidParameter);
}

TEST(Observables, T0Nodes) {
  FieldSpec f;
  f.omega = 2.0 * units::kPi / 8.0;
  f.t0 = 1.0;
  const auto nodes = t0_nodes(f, 4);
  ASSERT_EQ(nodes.size(), 4u);
  EXPECT_DOUBLE_EQ(nodes[0], 1.0);
  EXPECT_DOUBLE_EQ(nodes[3], 7.0);
  EXPECT_THROW(t0_nodes(f, 1), InvalidParameter);
}

TEST(Observables, OneColorAverageIsNotOriented) {
  for (double gamma : {0.0, 1.0}) {
    const RunDescription run = ocs_run(400.0, gamma, 20.0, 20, "mu+alpha+beta");
    const T0AveragedTrace avg = t0_average(run, 1, 8, 1);
    EXPECT_EQ(avg.n_t0, 8);
    for (double v : avg.values) EXPECT_LT(std::abs(v), 1e-10) << "gamma=" << gamma;
  }
}

TEST(Observables, AverageIsPeriodicInGridOrigin) {
  RunDescription run = ocs_run(400.0, 0.5, 10.0, 15, "mu+alpha");
  const int n = 8;
  const T0AveragedTrace a = t0_average(run, 1, n, 1);
  // Shifting the grid origin by one node spacing permutes the nodes.
  run.field.t0 += units::fs_to_au(400.0) / n;
  const T0AveragedTrace b = t0_average(run, 1, n, 1);
  for (std::size_t s = 0; s < a.values.size(); ++s) EXPECT_NEAR(a.values[s], b.values[s], 1e-10);
}

TEST(Observables, AverageIndependentOfWorkerCount) {
  const RunDescription run = ocs_run(400.0, 0.5, 5.0, 12, "mu+alpha");
  const auto one = t0_average(run, 4, 1);
  const auto many = t0_average(run, 4, 3);
  ASSERT_EQ(one.size(), 2u);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].values, many[i].values);
}

TEST(Observables, TimeAveragedRunPropagatesOnce) {
  RunDescription run = ocs_run(400.0, 0.5, 5.0, 12, "mu+alpha");
  run.time_averaged = true;
  const auto avg = t0_average(run, 1, 32, 1);
  for (double v : avg.values) EXPECT_EQ(v, 0.0);
}

TEST(Observables, HalfPeriodShiftOneColor) {
  for (double gamma : {0.0, 1.0}) {
    const RunDescription run = ocs_run(400.0, gamma, 10.0, 15, "mu+alpha+beta");
    const HalfPeriodReport odd = one_color_halfperiod_check(run, 1);
    EXPECT_EQ(odd.expected_sign, -1.0);
    EXPECT_LT(odd.max_deviation, 1e-10);
    const HalfPeriodReport even = one_color_halfperiod_check(run, 2);
    EXPECT_EQ(even.expected_sign, 1.0);
    EXPECT_LT(even.max_deviation, 1e-10);
  }
}

TEST(Observables, HalfPeriodRejectsTwoColor) {
  const RunDescription run = ocs_run(400.0, 0.5, 1.0, 10);
  EXPECT_THROW(one_color_halfperiod_check(run, 1), InvalidUse);
}
