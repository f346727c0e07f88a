#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "twocolor/banded.hpp"

using namespace twocolor;

namespace {

BandedOperator random_band(int n, int bw, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandedOperator a(n, bw);
  for (int d = 0; d <= a.half_bandwidth(); ++d) {
    for (int i = 0; i + d < n; ++i) a.set(i, i + d, u(rng));
  }
  return a;
}

}  // namespace

TEST(Banded, SymmetricAccessAndZeroOutsideBand) {
  BandedOperator a(5, 1);
  a.set(1, 2, 3.0);
  EXPECT_EQ(a(1, 2), 3.0);
  EXPECT_EQ(a(2, 1), 3.0);
  EXPECT_EQ(a(0, 4), 0.0);
  EXPECT_EQ(a(4, 0), 0.0);
}

TEST(Banded, BandwidthClampedToDimension) {
  BandedOperator a(3, 10);
  EXPECT_EQ(a.half_bandwidth(), 2);
}

TEST(Banded, ApplyMatchesDense) {
  const BandedOperator a = random_band(17, 3, 1);
  const Eigen::MatrixXd dense = a.to_dense();
  EXPECT_TRUE(dense.isApprox(dense.transpose()));
  Eigen::VectorXcd x = Eigen::VectorXcd::Random(17);
  Eigen::VectorXcd y(17);
  a.apply({x.data(), 17}, {y.data(), 17});
  const Eigen::VectorXcd ref = dense.cast<std::complex<double>>() * x;
  EXPECT_LT((y - ref).norm(), 1e-13);
}

TEST(Banded, MatrixPowerMatchesDense) {
  const BandedOperator a = random_band(12, 1, 2);
  const Eigen::MatrixXd dense = a.to_dense();
  for (int k = 1; k <= 3; ++k) {
    const BandedOperator p = matrix_power(a, k);
    EXPECT_EQ(p.half_bandwidth(), k);
    Eigen::MatrixXd ref = Eigen::MatrixXd::Identity(12, 12);
    for (int i = 0; i < k; ++i) ref = ref * dense;
    EXPECT_LT((p.to_dense() - ref).cwiseAbs().maxCoeff(), 1e-13) << "k=" << k;
  }
}

TEST(Banded, AddScaledTruncatedWidened) {
  const BandedOperator a = random_band(8, 2, 3);
  BandedOperator b = BandedOperator::identity(8).widened(2);
  b.add_scaled(2.0, a);
  EXPECT_LT((b.to_dense() - (Eigen::MatrixXd::Identity(8, 8) + 2.0 * a.to_dense())).norm(), 1e-14);
  const BandedOperator t = a.truncated(5);
  EXPECT_EQ(t.dim(), 5);
  EXPECT_EQ(t.to_dense(), a.to_dense().topLeftCorner(5, 5));
}

TEST(Banded, DiagonalFactory) {
  const std::vector<double> v{1.0, 2.0, 3.0};
  const BandedOperator d = BandedOperator::diagonal(v);
  EXPECT_EQ(d.half_bandwidth(), 0);
  EXPECT_EQ(d(2, 2), 3.0);
}

TEST(Banded, WriteText) {
  BandedOperator a(2, 1);
  a.set(0, 0, 1.0);
  a.set(0, 1, 0.5);
  std::ostringstream os;
  a.write_text(os);
  std::istringstream in(os.str());
  int n = 0, bw = 0;
  in >> n >> bw;
  EXPECT_EQ(n, 2);
  EXPECT_EQ(bw, 1);
  double v[4];
  for (double& x : v) in >> x;
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(v[1], 0.5);
  EXPECT_EQ(v[2], 0.5);
  EXPECT_EQ(v[3], 0.0);
}
