#include <cmath>

#include <gtest/gtest.h>

#include "quadrature.hpp"
#include "twocolor/error.hpp"
#include "twocolor/rotor.hpp"

using namespace twocolor;

TEST(Rotor, BasisValidation) {
  EXPECT_NO_THROW(validate(BasisSpec{0, 10, 3}));
  EXPECT_THROW(validate(BasisSpec{3, 2, 3}), InvalidParameter);
  EXPECT_THROW(validate(BasisSpec{0, 10, 2}), InvalidParameter);
  EXPECT_EQ((BasisSpec{-2, 10, 3}.dim()), 9);
  EXPECT_EQ((BasisSpec{-2, 10, 3}.j_min()), 2);
}

TEST(Rotor, FlagsRoundTrip) {
  for (const char* s : {"mu", "mu+alpha", "mu+alpha+beta", "alpha", "none"}) {
    EXPECT_EQ(to_string(parse_flags(s)), s);
  }
  EXPECT_THROW(parse_flags("mu+gamma"), InvalidParameter);
}

TEST(Rotor, JSquaredDiagonal) {
  const BandedOperator j2 = j_squared(BasisSpec{2, 8, 3});
  EXPECT_EQ(j2.half_bandwidth(), 0);
  EXPECT_EQ(j2(0, 0), 6.0);
  EXPECT_EQ(j2(6, 6), 72.0);
}

TEST(Rotor, CosMatrixElementFormula) {
  const BasisSpec b{1, 10, 3};
  const BandedOperator c = cos_matrix(b);
  for (int J = 1; J < 10; ++J) {
    const double expected = std::sqrt(((J + 1.0) * (J + 1.0) - 1.0) / ((2.0 * J + 1.0) * (2.0 * J + 3.0)));
    EXPECT_NEAR(c(J - 1, J), expected, 1e-15);
  }
}

// Every element of cos^k against the quadrature oracle, J <= 60, |M| <= 5.
TEST(Rotor, CosPowersMatchQuadratureOracle) {
  const auto rule = oracle::gauss_legendre(80);
  for (int M = -5; M <= 5; ++M) {
    const BasisSpec b{M, 60, 3};
    for (int k = 1; k <= 3; ++k) {
      const BandedOperator ck = cos_power_matrix(b, k);
      double worst = 0.0;
      for (int i = 0; i < b.dim(); ++i) {
        for (int j = i; j < std::min(b.dim(), i + 5); ++j) {
          const int J = b.j_min() + i;
          const int Jp = b.j_min() + j;
          const double ref = oracle::cos_power_element(J, Jp, M, k, rule);
          worst = std::max(worst, std::abs(ck(i, j) - ref));
        }
      }
      EXPECT_LT(worst, 1e-12) << "M=" << M << " k=" << k;
    }
  }
}

TEST(Rotor, CosPowerRejectsUnsupported) {
  EXPECT_THROW(cos_power_matrix(BasisSpec{0, 5, 3}, 4), UnsupportedPower);
  EXPECT_THROW(cos_power_matrix(BasisSpec{0, 5, 3}, 0), UnsupportedPower);
}

TEST(Rotor, HamiltonianIsBandedAndSymmetric) {
  const MoleculeParams m = ocs();
  const InternalParams p = to_internal(m);
  FieldSpec f;
  f.eps1 = 2e-3;
  f.eps2 = 1e-3;
  f.omega = 0.02;
  f.delta2 = 0.4;
  const BasisSpec b{0, 20, 3};
  const BandedOperator H = assemble_hamiltonian(p, f, InteractionFlags{true, true, true}, b, 12.0);
  EXPECT_LE(H.half_bandwidth(), 3);
  const Eigen::MatrixXd d = H.to_dense();
  EXPECT_EQ(d, d.transpose());
}

TEST(Rotor, FieldFreeHamiltonianIsRotorEnergy) {
  const InternalParams p = to_internal(ocs());
  FieldSpec f;
  const BasisSpec b{0, 10, 3};
  const BandedOperator H = assemble_hamiltonian(p, f, InteractionFlags{true, true, true}, b, 3.0);
  for (int J = 0; J <= 10; ++J) EXPECT_NEAR(H(J, J), p.B * J * (J + 1), 1e-18);
  EXPECT_EQ(H(0, 1), 0.0);
}

TEST(Rotor, InteractionCoefficients) {
  InternalParams p;
  p.mu = 2.0;
  p.dalpha = 3.0;
  p.alpha_perp = 5.0;
  p.dbeta = 6.0;
  p.beta_perp = 7.0;
  const double E = 0.1, E2 = 0.01, E3 = 0.001;
  const auto all = interaction_coefficients(p, {true, true, true}, E, E2, E3);
  EXPECT_DOUBLE_EQ(all.c1, -2.0 * 0.1 - 0.5 * 7.0 * 0.001);
  EXPECT_DOUBLE_EQ(all.c2, -0.5 * 3.0 * 0.01);
  EXPECT_DOUBLE_EQ(all.c3, -6.0 * 0.001 / 6.0);
  EXPECT_DOUBLE_EQ(all.identity, -0.5 * 5.0 * 0.01);
  const auto mu_only = interaction_coefficients(p, {true, false, false}, E, E2, E3);
  EXPECT_DOUBLE_EQ(mu_only.c1, -0.2);
  EXPECT_EQ(mu_only.c2, 0.0);
  EXPECT_EQ(mu_only.c3, 0.0);
  EXPECT_EQ(mu_only.identity, 0.0);
  const auto none = interaction_coefficients(p, {false, false, false}, E, E2, E3);
  EXPECT_EQ(none.c1, 0.0);
}

// The cycle-averaged Hamiltonian is the period mean of H(t); the rectangle
// rule is exact here because H(t) is a trigonometric polynomial.
TEST(Rotor, TimeAveragedHamiltonianIsCycleMean) {
  const InternalParams p = to_internal(ocs());
  const BasisSpec b{0, 15, 3};
  const RotorOperators ops = build_rotor_operators(b);
  for (auto [q1, q2] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 1}, std::pair{1, 1}}) {
    FieldSpec f;
    f.eps1 = 3e-3;
    f.eps2 = 2e-3;
    f.q1 = q1;
    f.q2 = q2;
    f.omega = 0.01;
    f.delta1 = 0.2;
    f.delta2 = 1.1;
    const InteractionFlags flags{true, true, true};
    const int n = 64;
    const double period = 2.0 * units::kPi / f.omega;
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(b.dim(), b.dim());
    for (int i = 0; i < n; ++i) mean += assemble_hamiltonian(ops, p, f, flags, period * i / n).to_dense();
    mean /= n;
    const Eigen::MatrixXd avg = assemble_time_averaged(ops, p, f, flags).to_dense();
    EXPECT_LT((mean - avg).cwiseAbs().maxCoeff(), 1e-17) << q1 << "," << q2;
  }
}
