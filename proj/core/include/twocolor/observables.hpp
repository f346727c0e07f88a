#pragma once

#include <vector>

#include <Eigen/Core>

#include "twocolor/banded.hpp"
#include "twocolor/propagator.hpp"

namespace twocolor {

// c^dagger A c for a real symmetric A; the (vanishing) imaginary part is dropped.
double expectation(const BandedOperator& A, const Eigen::VectorXcd& c);

// <cos^k theta> of a normalized state, k in {1,2,3}.
double expectation_cos_k(const WaveFunction& psi, int k, const BasisSpec& basis);
double expectation_cos_k(const WaveFunction& psi, int k, const RotorOperators& ops);

struct ExpectationTrace {
  int k = 1;
  std::vector<double> times;  // a.u.
  std::vector<double> values;
};

ExpectationTrace expectation_trace(const Trajectory& traj, int k);

struct T0AveragedTrace {
  int k = 1;
  std::vector<double> times;  // a.u.
  std::vector<double> values;
  int n_t0 = 0;
  std::vector<double> t0_nodes;  // a.u.
};

// Rectangle-rule average over t0 in [tau, tau + 2pi/omega) with n_t0 uniform
// nodes, tau = run.field.t0. Runs the n_t0 propagations on `workers` threads
// and sums them in node order. A time-averaged run does not depend on t0 and
// is propagated once.
std::vector<T0AveragedTrace> t0_average(const RunDescription& run, int n_t0, int workers);
T0AveragedTrace t0_average(const RunDescription& run, int k, int n_t0, int workers);

// The nodes used by t0_average.
std::vector<double> t0_nodes(const FieldSpec& spec, int n_t0);

struct HalfPeriodReport {
  int k = 1;
  double shift = 0.0;          // pi / (q_i omega)
  double expected_sign = 1.0;  // (-1)^k
  double max_deviation = 0.0;  // max |<.>(t0 + shift) - (-1)^k <.>(t0)|
  ExpectationTrace original;
  ExpectationTrace shifted;
};

// For a one-color field, compares the traces at t0 and t0 + pi/(q_i omega).
HalfPeriodReport one_color_halfperiod_check(const RunDescription& run, int k);

}  // namespace twocolor
