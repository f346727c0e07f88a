#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "twocolor/error.hpp"
#include "twocolor/fourierfit.hpp"
#include "twocolor/params.hpp"

using namespace twocolor;

namespace {

constexpr double kPi = units::kPi;

std::vector<double> sample(const std::vector<double>& grid, int q1, int q2, double delta1,
                           const std::vector<std::pair<int, std::pair<double, double>>>& terms) {
  std::vector<double> v;
  for (double d2 : grid) {
    const double xi = q1 * d2 - q2 * delta1;
    double s = 0.0;
    for (const auto& [j, cp] : terms) s += cp.first * std::cos(j * xi + cp.second);
    v.push_back(s);
  }
  return v;
}

}  // namespace

TEST(FourierFit, ParityClasses) {
  EXPECT_EQ(fit_parity(1, 1, 2), FitParity::odd_j);
  EXPECT_EQ(fit_parity(2, 1, 2), FitParity::even_j);
  EXPECT_EQ(fit_parity(3, 2, 3), FitParity::odd_j);
  EXPECT_EQ(fit_parity(1, 1, 3), FitParity::zero);
  EXPECT_EQ(fit_parity(2, 1, 3), FitParity::all_j);
  EXPECT_EQ(fit_parity(1, 2, 4), FitParity::odd_j);  // reduced to (1, 2)
  EXPECT_EQ(to_string(FitParity::odd_j), "odd-j");
  EXPECT_THROW(fit_parity(0, 1, 2), InvalidParameter);
}

TEST(FourierFit, SingleHarmonic) {
  const auto grid = uniform_delta2_grid(32);
  const auto v = sample(grid, 1, 2, 0.0, {{1, {0.1, kPi / 2}}});
  const FourierFit fit = fit_series(grid, v, 1, 1, 2, 0.0);
  EXPECT_NEAR(fit.C[1], 0.1, 1e-15);
  EXPECT_NEAR(fit.phi[1], kPi / 2, 1e-12);
  EXPECT_EQ(fit.C[2], 0.0);
  EXPECT_NEAR(fit.C[3], 0.0, 1e-16);
  EXPECT_LT(fit.residual, 1e-15);
  EXPECT_EQ(fit.C.size(), 16u);
}

TEST(FourierFit, ZeroSeries) {
  const auto grid = uniform_delta2_grid(32);
  const FourierFit fit = fit_series(grid, std::vector<double>(32, 0.0), 1, 1, 2, 0.0);
  for (double c : fit.C) EXPECT_EQ(c, 0.0);
  for (double p : fit.phi) EXPECT_EQ(p, 0.0);
}

TEST(FourierFit, RejectsBadGrids) {
  auto grid = uniform_delta2_grid(32);
  std::vector<double> v(32, 1.0);
  grid[5] += 0.01;
  EXPECT_THROW(fit_series(grid, v, 2, 1, 2, 0.0), InvalidInput);
  const auto small = uniform_delta2_grid(31);
  EXPECT_THROW(fit_series(small, std::vector<double>(31, 1.0), 2, 1, 2, 0.0), InvalidInput);
  EXPECT_THROW(fit_series(uniform_delta2_grid(32), std::vector<double>(31, 1.0), 2, 1, 2, 0.0),
               InvalidInput);
}

TEST(FourierFit, ShuffledGridIsAccepted) {
  auto grid = uniform_delta2_grid(32);
  std::mt19937 rng(1);
  std::shuffle(grid.begin(), grid.end(), rng);
  const auto v = sample(grid, 1, 2, 0.0, {{2, {0.3, 0.5}}, {0, {0.2, 0.0}}});
  const FourierFit fit = fit_series(grid, v, 2, 1, 2, 0.0);
  EXPECT_NEAR(fit.C[0], 0.2, 1e-15);
  EXPECT_NEAR(fit.C[2], 0.3, 1e-15);
  EXPECT_NEAR(fit.phi[2], 0.5, 1e-12);
}

TEST(FourierFit, ForbiddenParityRaises) {
  const auto grid = uniform_delta2_grid(32);
  const auto v = sample(grid, 1, 2, 0.0, {{1, {0.1, 0.0}}, {2, {1e-3, 0.0}}});
  EXPECT_THROW(fit_series(grid, v, 1, 1, 2, 0.0), ParityViolation);
  FitOptions loose;
  loose.leakage_threshold = 0.1;
  const FourierFit fit = fit_series(grid, v, 1, 1, 2, 0.0, loose);
  EXPECT_NEAR(fit.max_leakage, 1e-3, 1e-15);
  EXPECT_EQ(fit.C[2], 0.0);
}

TEST(FourierFit, ZeroClassAcceptsRoundingNoise) {
  const auto grid = uniform_delta2_grid(32);
  std::vector<double> v(32);
  for (int i = 0; i < 32; ++i) v[i] = 1e-15 * std::sin(3.0 * i);
  EXPECT_NO_THROW(fit_series(grid, v, 1, 1, 3, 0.0));
  v[0] = 1e-6;
  EXPECT_THROW(fit_series(grid, v, 1, 1, 3, 0.0), ParityViolation);
}

TEST(FourierFit, Parseval) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<int, std::pair<double, double>>> terms;
  for (int j = 1; j <= 15; j += 2) terms.push_back({j, {u(rng), 2 * kPi * u(rng)}});
  const auto grid = uniform_delta2_grid(64);
  const auto v = sample(grid, 1, 2, 0.0, terms);
  const FourierFit fit = fit_series(grid, v, 1, 1, 2, 0.0);
  double lhs = 0.0;
  for (double x : v) lhs += x * x;
  lhs /= v.size();
  double rhs = fit.C[0] * fit.C[0];
  for (int j = 1; j <= 15; ++j) rhs += 0.5 * fit.C[j] * fit.C[j];
  EXPECT_NEAR(lhs, rhs, 1e-13);
  EXPECT_LT(fit.residual, 1e-13);
}

TEST(FourierFit, FitOfReconstructionIsStable) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<int, std::pair<double, double>>> terms;
  for (int j = 0; j <= 14; j += 2) terms.push_back({j, {u(rng), 2 * kPi * u(rng)}});
  const auto grid = uniform_delta2_grid(40);
  const FourierFit first = fit_series(grid, sample(grid, 1, 2, 0.0, terms), 2, 1, 2, 0.0);
  std::vector<double> again;
  for (double d : grid) again.push_back(reconstruct(first, d));
  const FourierFit second = fit_series(grid, again, 2, 1, 2, 0.0);
  for (int j = 0; j <= 15; ++j) EXPECT_NEAR(first.C[j], second.C[j], 1e-14);
}

TEST(FourierFit, NegatedSeriesShiftsPhaseByPi) {
  const auto grid = uniform_delta2_grid(32);
  auto v = sample(grid, 1, 2, 0.0, {{1, {0.2, 0.4}}, {3, {0.05, 1.0}}});
  const FourierFit a = fit_series(grid, v, 1, 1, 2, 0.0);
  for (double& x : v) x = -x;
  const FourierFit b = fit_series(grid, v, 1, 1, 2, 0.0);
  for (int j : {1, 3}) {
    EXPECT_NEAR(a.C[j], b.C[j], 1e-15);
    EXPECT_NEAR(std::remainder(b.phi[j] - a.phi[j] - kPi, 2 * kPi), 0.0, 1e-12);
  }
}

TEST(FourierFit, GeneralDelta1AndQ) {
  // q = (2, 3), delta1 = 0.7: xi = 2 delta2 - 2.1, so delta2 needs N nodes in [0, pi).
  const int n = 36;
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) grid.push_back(kPi * i / n);
  const auto v = sample(grid, 2, 3, 0.7, {{1, {0.3, 1.2}}, {5, {0.01, 2.0}}});
  const FourierFit fit = fit_series(grid, v, 3, 2, 3, 0.7);
  EXPECT_NEAR(fit.C[1], 0.3, 1e-14);
  EXPECT_NEAR(fit.phi[1], 1.2, 1e-12);
  EXPECT_NEAR(fit.C[5], 0.01, 1e-14);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(reconstruct(fit, grid[i]), v[i], 1e-14);
}
