#include "twocolor/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "twocolor/error.hpp"
#include "twocolor/parallel.hpp"

namespace twocolor {

double expectation(const BandedOperator& A, const Eigen::VectorXcd& c) {
  const int n = A.dim();
  if (c.size() != n) throw InvalidParameter("state and operator dimensions differ");
  double sum = 0.0;
  auto diag = A.band(0);
  for (int i = 0; i < n; ++i) sum += diag[i] * std::norm(c(i));
  for (int d = 1; d <= A.half_bandwidth(); ++d) {
    auto b = A.band(d);
    double off = 0.0;
    for (int i = 0; i + d < n; ++i) off += b[i] * (std::conj(c(i)) * c(i + d)).real();
    sum += 2.0 * off;
  }
  return sum;
}

double expectation_cos_k(const WaveFunction& psi, int k, const RotorOperators& ops) {
  return expectation(ops.cos_power(k), psi.coefficients);
}

double expectation_cos_k(const WaveFunction& psi, int k, const BasisSpec& basis) {
  return expectation(cos_power_matrix(basis, k), psi.coefficients);
}

ExpectationTrace expectation_trace(const Trajectory& traj, int k) {
  return ExpectationTrace{k, traj.times, traj.trace(k)};
}

std::vector<double> t0_nodes(const FieldSpec& spec, int n_t0) {
  if (n_t0 < 2) throw InvalidParameter("t0 average needs at least 2 nodes");
  validate(spec);
  const double period = 2.0 * units::kPi / spec.omega;
  std::vector<double> nodes(n_t0);
  for (int i = 0; i < n_t0; ++i) nodes[i] = spec.t0 + period * i / n_t0;
  return nodes;
}

std::vector<T0AveragedTrace> t0_average(const RunDescription& run, int n_t0, int workers) {
  validate(run);
  const std::vector<double> nodes = t0_nodes(run.field, n_t0);
  const RotorOperators ops = build_rotor_operators(run.basis);

  const std::size_t n_runs = run.time_averaged ? 1 : nodes.size();
  std::vector<Trajectory> trajectories(n_runs);
  parallel_for(n_runs, workers, [&](std::size_t i) {
    RunDescription r = run;
    r.field.t0 = nodes[i];
    trajectories[i] = propagate(r, ops);
  });

  std::vector<T0AveragedTrace> out;
  for (int k : run.ks) {
    T0AveragedTrace avg;
    avg.k = k;
    avg.times = trajectories.front().times;
    avg.n_t0 = n_t0;
    avg.t0_nodes = nodes;
    avg.values.assign(avg.times.size(), 0.0);
    for (const Trajectory& traj : trajectories) {
      const auto& v = traj.trace(k);
      for (std::size_t s = 0; s < v.size(); ++s) avg.values[s] += v[s];
    }
    for (double& v : avg.values) v /= static_cast<double>(n_runs);
    out.push_back(std::move(avg));
  }
  return out;
}

T0AveragedTrace t0_average(const RunDescription& run, int k, int n_t0, int workers) {
  RunDescription r = run;
  r.ks = {k};
  return std::move(t0_average(r, n_t0, workers).front());
}

HalfPeriodReport one_color_halfperiod_check(const RunDescription& run, int k) {
  validate(run);
  const FieldSpec& f = run.field;
  if (f.eps1 != 0.0 && f.eps2 != 0.0) {
    throw InvalidUse("half-period relation holds only for a one-color field");
  }
  const int q = f.eps1 != 0.0 ? f.q1 : f.q2;
  HalfPeriodReport report;
  report.k = k;
  report.shift = units::kPi / (q * f.omega);
  report.expected_sign = (k % 2 == 0) ? 1.0 : -1.0;

  RunDescription a = run;
  a.ks = {k};
  RunDescription b = a;
  b.field.t0 += report.shift;
  const RotorOperators ops = build_rotor_operators(run.basis);
  report.original = expectation_trace(propagate(a, ops), k);
  report.shifted = expectation_trace(propagate(b, ops), k);
  for (std::size_t i = 0; i < report.original.values.size(); ++i) {
    report.max_deviation =
        std::max(report.max_deviation, std::abs(report.shifted.values[i] -
                                                report.expected_sign * report.original.values[i]));
  }
  return report;
}

}  // namespace twocolor
