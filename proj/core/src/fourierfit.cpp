#include "twocolor/fourierfit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twocolor/error.hpp"
#include "twocolor/field.hpp"
#include "twocolor/params.hpp"

namespace twocolor {

namespace {

constexpr double kTwoPi = 2.0 * units::kPi;

bool allowed(FitParity parity, int j) {
  switch (parity) {
    case FitParity::odd_j: return j % 2 == 1;
    case FitParity::even_j: return j % 2 == 0;
    case FitParity::all_j: return true;
    case FitParity::zero: return false;
  }
  return false;
}

// Checks that the xi values form a shifted uniform grid of spacing 2pi/N.
void check_uniform(std::vector<double> xi) {
  const std::size_t n = xi.size();
  std::sort(xi.begin(), xi.end());
  const double h = kTwoPi / static_cast<double>(n);
  const double tol = 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? xi[i + 1] : xi[0] + kTwoPi;
    if (std::abs(next - xi[i] - h) > tol) {
      throw InvalidInput("samples are not uniform in q1*delta2 - q2*delta1 over one period");
    }
  }
}

}  // namespace

std::string to_string(FitParity parity) {
  switch (parity) {
    case FitParity::odd_j: return "odd-j";
    case FitParity::even_j: return "even-j";
    case FitParity::all_j: return "all-j";
    case FitParity::zero: return "zero";
  }
  return "unknown";
}

FitParity fit_parity(int k, int q1, int q2) {
  if (k < 1) throw InvalidParameter("observable power must be positive");
  if (q1 < 1 || q2 < 1) throw InvalidParameter("harmonic multipliers must be positive");
  const int g = std::gcd(q1, q2);
  const bool sum_odd = ((q1 / g + q2 / g) % 2) != 0;
  if (sum_odd) return k % 2 == 1 ? FitParity::odd_j : FitParity::even_j;
  return k % 2 == 1 ? FitParity::zero : FitParity::all_j;
}

std::vector<double> uniform_delta2_grid(int n) {
  if (n < 1) throw InvalidParameter("grid needs at least one node");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = kTwoPi * i / n;
  return out;
}

FourierFit fit_series(const std::vector<double>& delta2, const std::vector<double>& values, int k,
                      int q1, int q2, double delta1, const FitOptions& options) {
  if (delta2.size() != values.size()) throw InvalidInput("delta2 and value counts differ");
  if (options.jmax < 0) throw InvalidParameter("jmax must be nonnegative");
  const std::size_t n = delta2.size();
  if (n < static_cast<std::size_t>(2 * options.jmax + 2)) {
    throw InvalidInput("need at least 2*jmax+2 samples, got " + std::to_string(n));
  }
  FourierFit fit;
  fit.k = k;
  fit.parity = fit_parity(k, q1, q2);
  fit.jmax = options.jmax;
  fit.q1 = q1;
  fit.q2 = q2;
  fit.delta1 = delta1;

  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) xi[i] = wrap_phase(q1 * delta2[i] - q2 * delta1);
  check_uniform(xi);

  const int nyquist = static_cast<int>(n / 2);
  std::vector<double> amp(nyquist + 1), phase(nyquist + 1);
  for (int j = 0; j <= nyquist; ++j) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a += values[i] * std::cos(j * xi[i]);
      b += values[i] * std::sin(j * xi[i]);
    }
    const bool edge = (j == 0) || (n % 2 == 0 && j == nyquist);
    const double scale = (edge ? 1.0 : 2.0) / static_cast<double>(n);
    a *= scale;
    b *= scale;
    // a cos(j xi) + b sin(j xi) = C cos(j xi + phi).
    amp[j] = std::hypot(a, b);
    phase[j] = amp[j] == 0.0 ? 0.0 : wrap_phase(std::atan2(-b, a));
  }

  double largest = 0.0;
  for (int j = 0; j <= nyquist; ++j) {
    if (allowed(fit.parity, j)) largest = std::max(largest, amp[j]);
    else fit.max_leakage = std::max(fit.max_leakage, amp[j]);
  }
  // Rounding noise in identically vanishing data must not count as leakage.
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double limit = std::max(options.leakage_threshold * largest, 1e-12 * std::max(scale, 1.0));
  if (fit.max_leakage > limit) {
    throw ParityViolation("forbidden " + to_string(fit.parity) + " leakage " +
                          std::to_string(fit.max_leakage) + " exceeds " + std::to_string(limit));
  }

  fit.C.assign(options.jmax + 1, 0.0);
  fit.phi.assign(options.jmax + 1, 0.0);
  for (int j = 0; j <= std::min(options.jmax, nyquist); ++j) {
    if (!allowed(fit.parity, j)) continue;
    fit.C[j] = amp[j];
    fit.phi[j] = phase[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual, std::abs(values[i] - reconstruct(fit, delta2[i])));
  }
  return fit;
}

double reconstruct(const FourierFit& fit, double delta2) {
  const double xi = fit.q1 * delta2 - fit.q2 * fit.delta1;
  double sum = 0.0;
  for (std::size_t j = 0; j < fit.C.size(); ++j) {
    if (fit.C[j] != 0.0) sum += fit.C[j] * std::cos(static_cast<double>(j) * xi + fit.phi[j]);
  }
  return sum;
}

}  // namespace twocolor
