#pragma once

#include <string>
#include <vector>

namespace twocolor {

// Which harmonics j of xi12 = q1 delta2 - q2 delta1 may appear.
enum class FitParity { odd_j, even_j, all_j, zero };

std::string to_string(FitParity parity);

// Parity class fixed by k and the parity of q1 + q2.
FitParity fit_parity(int k, int q1, int q2);

struct FitOptions {
  int jmax = 15;
  // Forbidden-parity amplitudes must stay below this fraction of the largest
  // allowed amplitude.
  double leakage_threshold = 1e-6;
};

// sum_j C[j] cos(j xi12 + phi[j]), j = 0..jmax; entries outside the parity
// class are zero.
struct FourierFit {
  int k = 1;
  FitParity parity = FitParity::all_j;
  int jmax = 0;
  int q1 = 1;
  int q2 = 2;
  double delta1 = 0.0;
  std::vector<double> C;
  std::vector<double> phi;  // [0, 2pi)
  double residual = 0.0;    // max |sample - reconstruction|
  double max_leakage = 0.0; // largest forbidden amplitude seen
};

// Discrete Fourier analysis of samples on a grid in delta2 that is uniform
// in xi12 mod 2pi. Throws InvalidInput for a non-uniform or too small grid and
// ParityViolation when forbidden harmonics exceed the threshold.
FourierFit fit_series(const std::vector<double>& delta2, const std::vector<double>& values, int k,
                      int q1, int q2, double delta1, const FitOptions& options = {});

double reconstruct(const FourierFit& fit, double delta2);

// Uniform nodes 2 pi i / n, i < n.
std::vector<double> uniform_delta2_grid(int n);

}  // namespace twocolor
