#include "twocolor/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <functional>

#include "twocolor/error.hpp"
#include "twocolor/observables.hpp"

namespace twocolor {
namespace {

constexpr int kMaxHalvings = 20;

double infinity_norm(const BandedOperator& H) {
  const int n = H.dim();
  std::vector<double> rows(n, 0.0);
  for (int d = 0; d <= H.half_bandwidth(); ++d) {
    auto b = H.band(d);
    for (std::size_t i = 0; i < b.size(); ++i) {
      rows[i] += std::abs(b[i]);
      if (d > 0) rows[i + d] += std::abs(b[i]);
    }
  }
  return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

// Advances psi from t to t + dt under H(t'), splitting the step when the
// Krylov estimate rejects it.
class Stepper {
 public:
  using Assembler = std::function<const BandedOperator&(double)>;

  Stepper(const PropagatorConfig& config, Assembler assemble)
      : lanczos_(config), assemble_(std::move(assemble)) {}

  void advance(Eigen::VectorXcd& psi, double t, double dt, Trajectory& traj) {
    advance(psi, t, dt, traj, 0);
    const double norm = psi.norm();
    const double drift = std::abs(norm - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    traj.cumulative_norm_drift += drift;
    psi /= norm;
    ++traj.steps;
  }

 private:
  void advance(Eigen::VectorXcd& psi, double t, double dt, Trajectory& traj, int depth) {
    const double t_field = lanczos_.config().field_time_rule == FieldTimeRule::midpoint
                               ? t + 0.5 * dt
                               : t;
    StepStats stats;
    if (lanczos_.try_step(assemble_(t_field), psi, dt, stats, std::ldexp(1.0, -depth))) return;
    if (depth >= kMaxHalvings) {
      throw StepFailure("Krylov step failed to meet the tolerance after 20 halvings at t = " +
                        std::to_string(t));
    }
    ++traj.rejected_steps;
    advance(psi, t, 0.5 * dt, traj, depth + 1);
    advance(psi, t + 0.5 * dt, 0.5 * dt, traj, depth + 1);
  }

  LanczosPropagator lanczos_;
  Assembler assemble_;
};

}  // namespace

WaveFunction basis_state(const BasisSpec& basis, int J) {
  validate(basis);
  if (J < basis.j_min() || J > basis.Jmax) {
    throw InvalidParameter("initial J outside the basis");
  }
  WaveFunction psi;
  psi.M = basis.M;
  psi.coefficients = Eigen::VectorXcd::Zero(basis.dim());
  psi.coefficients(J - basis.j_min()) = 1.0;
  return psi;
}

void validate(const PropagatorConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw InvalidParameter("time step must be positive");
  }
  if (config.krylov_dim < 4) throw InvalidParameter("Krylov dimension must be at least 4");
  if (config.krylov_dim > LanczosPropagator::kMaxKrylovDim) {
    throw InvalidParameter("Krylov dimension must be at most 32");
  }
  if (!(config.step_tolerance > 0.0)) throw InvalidParameter("step tolerance must be positive");
}

PropagatorConfig default_config(double laser_period) {
  PropagatorConfig c;
  c.dt = laser_period / 200.0;
  return c;
}

LanczosPropagator::LanczosPropagator(PropagatorConfig config) : config_(config) {
  if (config_.krylov_dim > kMaxKrylovDim) {
    throw InvalidParameter("Krylov dimension is limited to " + std::to_string(kMaxKrylovDim));
  }
  alpha_.reserve(config_.krylov_dim);
  beta_.reserve(config_.krylov_dim);
}

bool LanczosPropagator::try_step(const BandedOperator& H, Eigen::VectorXcd& psi, double dt,
                                 StepStats& stats, double share) {
  const int n = H.dim();
  if (psi.size() != n) throw InvalidParameter("wavefunction and operator dimensions differ");
  const double beta0 = psi.norm();
  if (beta0 == 0.0 || dt == 0.0) return true;

  const int m = std::min(config_.krylov_dim, n);
  if (basis_.rows() != n || basis_.cols() < m + 1) basis_.resize(n, m + 1);
  if (work_.size() != n) work_.resize(n);

  const double hscale = infinity_norm(H);
  const double tol = config_.step_tolerance * share;
  alpha_.assign(m, 0.0);
  beta_.assign(m, 0.0);

  basis_.col(0) = psi / beta0;
  int size = m;
  bool breakdown = false;
  double apriori = 1.0;
  for (int j = 0; j < m; ++j) {
    H.apply(std::span<const std::complex<double>>(basis_.col(j).data(), n),
            std::span<std::complex<double>>(work_.data(), n));
    const double a = basis_.col(j).dot(work_).real();
    work_ -= a * basis_.col(j);
    if (j > 0) work_ -= beta_[j - 1] * basis_.col(j - 1);
    for (int i = 0; i <= j; ++i) {
      const std::complex<double> c = basis_.col(i).dot(work_);
      work_ -= c * basis_.col(i);
    }
    const double b = work_.norm();
    alpha_[j] = a;
    beta_[j] = b;
    if (b <= 1e-14 * hscale || b == 0.0) {
      size = j + 1;
      breakdown = true;
      break;
    }
    apriori *= b * std::abs(dt) / (j + 1);
    basis_.col(j + 1) = work_ / b;
    if (apriori < 0.1 * tol) {
      size = j + 1;
      break;
    }
  }

  KrylovVector c(size);
  double residual = 0.0;
  if (size == 1) {
    c(0) = std::exp(std::complex<double>(0.0, -alpha_[0] * dt));
  } else {
    KrylovReal diag = Eigen::Map<const Eigen::VectorXd>(alpha_.data(), size);
    KrylovReal sub = Eigen::Map<const Eigen::VectorXd>(beta_.data(), size - 1);
    eigen_.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& lambda = eigen_.eigenvalues();
    const auto& z = eigen_.eigenvectors();
    for (int i = 0; i < size; ++i) c(i) = 0.0;
    for (int l = 0; l < size; ++l) {
      const std::complex<double> w = std::polar(z(0, l), -lambda(l) * dt);
      for (int i = 0; i < size; ++i) c(i) += z(i, l) * w;
    }
    // The residual of the Krylov solution is driven by phi_1(-i T dt); the
    // plain exponential entry underestimates it once |H dt| >> 1.
    if (!breakdown) {
      std::complex<double> phi{0.0, 0.0};
      for (int l = 0; l < size; ++l) {
        const double x = lambda(l) * dt;
        const std::complex<double> p1 =
            std::abs(x) < 1e-8 ? std::complex<double>(1.0, -0.5 * x)
                               : (std::polar(1.0, -x) - 1.0) / std::complex<double>(0.0, -x);
        phi += z(size - 1, l) * z(0, l) * p1;
      }
      residual = std::abs(dt) * std::abs(phi);
    }
  }

  const double error = breakdown ? 0.0 : beta0 * beta_[size - 1] * std::max(std::abs(c(size - 1)), residual);
  if (error > tol) return false;

  psi = (beta0 * c(0)) * basis_.col(0);
  for (int i = 1; i < size; ++i) psi += (beta0 * c(i)) * basis_.col(i);
  ++stats.substeps;
  stats.krylov_size = std::max(stats.krylov_size, size);
  stats.error_estimate = std::max(stats.error_estimate, error);
  return true;
}

WaveFunction sil_step(const BandedOperator& H, const WaveFunction& psi, double dt,
                      const PropagatorConfig& config, StepStats* stats) {
  if (config.krylov_dim < 4) throw InvalidParameter("Krylov dimension must be at least 4");
  LanczosPropagator lanczos(config);
  StepStats local;
  WaveFunction out = psi;
  bool done = false;
  for (int halvings = 0; halvings <= kMaxHalvings && !done; ++halvings) {
    const std::int64_t pieces = std::int64_t{1} << halvings;
    const double h = dt / static_cast<double>(pieces);
    Eigen::VectorXcd trial = psi.coefficients;
    StepStats attempt;
    bool ok = true;
    for (std::int64_t s = 0; s < pieces && ok; ++s) ok = lanczos.try_step(H, trial, h, attempt, 1.0 / static_cast<double>(pieces));
    if (ok) {
      out.coefficients = std::move(trial);
      local = attempt;
      done = true;
    }
  }
  if (!done) throw StepFailure("Krylov step failed to meet the tolerance after 20 halvings");
  const double norm = out.coefficients.norm();
  local.norm_drift = std::abs(norm - 1.0);
  out.coefficients /= norm;
  out.time = psi.time + dt;
  if (stats) *stats = local;
  return out;
}

const std::vector<double>& Trajectory::trace(int k) const {
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] == k) return values[i];
  }
  throw InvalidParameter("trajectory does not contain <cos^" + std::to_string(k) + ">");
}

Trajectory propagate(const RotorOperators& ops, const InternalParams& p,
                     const FieldSpec& spec, const InteractionFlags& flags,
                     const WaveFunction& psi0, double t_end, double sample_every,
                     const PropagatorConfig& config, const PropagateOptions& options) {
  validate(spec);
  validate(config);
  if (!(t_end > 0.0)) throw InvalidParameter("end time must be positive");
  if (!(sample_every > 0.0)) throw InvalidParameter("sampling interval must be positive");
  if (psi0.coefficients.size() != ops.basis.dim() || psi0.M != ops.basis.M) {
    throw InvalidParameter("initial state does not match the basis");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw InvalidParameter("initial state must be normalized");
  }
  for (int k : options.ks) (void)ops.cos_power(k);

  BandedOperator H;
  const BandedOperator averaged =
      options.time_averaged ? assemble_time_averaged(ops, p, spec, flags) : BandedOperator();
  auto assembler = [&](double t) -> const BandedOperator& {
    if (options.time_averaged) return averaged;
    const double E = evaluate(spec, t);
    assemble(ops, p, interaction_coefficients(p, flags, E, E * E, E * E * E), H);
    return H;
  };
  Stepper stepper(config, assembler);

  const auto n_samples = static_cast<std::int64_t>(std::floor(t_end / sample_every + 1e-9)) + 1;
  const auto steps_per_sample =
      static_cast<std::int64_t>(std::ceil(sample_every / config.dt - 1e-9));
  const double h = sample_every / static_cast<double>(steps_per_sample);

  Trajectory traj;
  traj.ks = options.ks;
  traj.values.assign(options.ks.size(), {});
  traj.times.reserve(n_samples);
  for (auto& v : traj.values) v.reserve(n_samples);

  Eigen::VectorXcd psi = psi0.coefficients;
  auto record = [&](double t) {
    traj.times.push_back(psi0.time + t);
    for (std::size_t i = 0; i < options.ks.size(); ++i) {
      traj.values[i].push_back(expectation(ops.cos_power(options.ks[i]), psi));
    }
    if (options.store_states) traj.states.push_back(psi);
  };

  record(0.0);
  for (std::int64_t s = 1; s < n_samples; ++s) {
    const double start = static_cast<double>(s - 1) * sample_every;
    for (std::int64_t i = 0; i < steps_per_sample; ++i) {
      stepper.advance(psi, psi0.time + start + static_cast<double>(i) * h, h, traj);
    }
    record(static_cast<double>(s) * sample_every);
  }
  return traj;
}

Trajectory propagate(const InternalParams& p, const FieldSpec& spec,
                     const InteractionFlags& flags, const BasisSpec& basis,
                     const WaveFunction& psi0, double t_end, double sample_every,
                     const PropagatorConfig& config, const PropagateOptions& options) {
  return propagate(build_rotor_operators(basis), p, spec, flags, psi0, t_end, sample_every,
                   config, options);
}

void validate(const RunDescription& run) {
  validate(run.field);
  validate(run.basis);
  validate(run.config);
  if (!(run.t_end > 0.0)) throw InvalidParameter("end time must be positive");
  if (!(run.sample_every > 0.0)) throw InvalidParameter("sampling interval must be positive");
  if (run.ks.empty()) throw InvalidParameter("no observables requested");
}

Trajectory propagate(const RunDescription& run, const RotorOperators& ops) {
  validate(run);
  PropagateOptions options;
  options.ks = run.ks;
  options.time_averaged = run.time_averaged;
  return propagate(ops, run.molecule, run.field, run.flags, basis_state(run.basis, run.initial_J),
                   run.t_end, run.sample_every, run.config, options);
}

Trajectory propagate(const RunDescription& run) {
  validate(run);
  return propagate(run, build_rotor_operators(run.basis));
}

namespace {

double max_trace_change(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  for (int k : {1, 2}) {
    const auto& x = a.trace(k);
    const auto& y = b.trace(k);
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      worst = std::max(worst, std::abs(x[i] - y[i]));
    }
  }
  return worst;
}

}  // namespace

ConvergenceReport converge(const RunDescription& run, const ConvergenceTargets& targets) {
  RunDescription probe = run;
  probe.t_end = std::min(run.t_end > 0.0 ? run.t_end : targets.probe_time, targets.probe_time);
  probe.sample_every = std::min(run.sample_every, probe.t_end);
  probe.ks = {1, 2};
  probe.basis.Jmax = std::max(targets.Jmax, run.basis.j_min());
  probe.config.krylov_dim = targets.krylov_dim;
  if (targets.dt > 0.0) probe.config.dt = targets.dt;
  validate(probe);

  auto run_with = [&](int Jmax, double dt) {
    RunDescription r = probe;
    r.basis.Jmax = Jmax;
    r.config.dt = dt;
    return propagate(r);
  };

  ConvergenceReport report;
  int halvings = 0;
  Trajectory base = run_with(probe.basis.Jmax, probe.config.dt);
  for (;;) {
    ConvergenceIteration it;
    it.Jmax = probe.basis.Jmax;
    it.dt = probe.config.dt;
    it.dt_change = -1.0;

    Trajectory wider = run_with(2 * probe.basis.Jmax, probe.config.dt);
    it.jmax_change = max_trace_change(base, wider);
    if (it.jmax_change >= targets.tolerance) {
      report.history.push_back(it);
      probe.basis.Jmax *= 2;
      if (probe.basis.Jmax > targets.max_Jmax) {
        throw ConvergenceFailure("observables not converged in Jmax up to " +
                                 std::to_string(targets.max_Jmax) + " (last change " +
                                 std::to_string(it.jmax_change) + ")");
      }
      base = std::move(wider);
      continue;
    }

    Trajectory finer = run_with(probe.basis.Jmax, 0.5 * probe.config.dt);
    it.dt_change = max_trace_change(base, finer);
    report.history.push_back(it);
    if (it.dt_change >= targets.tolerance) {
      if (++halvings > targets.max_dt_halvings) {
        throw ConvergenceFailure("observables not converged in dt after " +
                                 std::to_string(targets.max_dt_halvings) + " halvings");
      }
      probe.config.dt *= 0.5;
      base = std::move(finer);
      continue;
    }
    break;
  }

  report.basis = run.basis;
  report.basis.Jmax = probe.basis.Jmax;
  report.config = run.config;
  report.config.dt = probe.config.dt;
  report.config.krylov_dim = probe.config.krylov_dim;
  return report;
}

void save_checkpoint(const WaveFunction& psi, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open checkpoint file " + path);
  const char magic[8] = {'T', 'C', 'W', 'F', '0', '0', '0', '1'};
  out.write(magic, sizeof magic);
  const std::int64_t n = psi.coefficients.size();
  const std::int64_t M = psi.M;
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&M), sizeof M);
  out.write(reinterpret_cast<const char*>(&psi.time), sizeof psi.time);
  out.write(reinterpret_cast<const char*>(psi.coefficients.data()),
            static_cast<std::streamsize>(n * sizeof(std::complex<double>)));
  if (!out) throw InvalidInput("failed writing checkpoint " + path);
}

WaveFunction load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open checkpoint file " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, "TCWF0001", 8) != 0) {
    throw InvalidInput("not a wavefunction checkpoint: " + path);
  }
  std::int64_t n = 0;
  std::int64_t M = 0;
  WaveFunction psi;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&M), sizeof M);
  in.read(reinterpret_cast<char*>(&psi.time), sizeof psi.time);
  if (!in || n <= 0 || n > (1 << 20)) throw InvalidInput("corrupt checkpoint header: " + path);
  psi.M = static_cast<int>(M);
  psi.coefficients.resize(n);
  in.read(reinterpret_cast<char*>(psi.coefficients.data()),
          static_cast<std::streamsize>(n * sizeof(std::complex<double>)));
  if (!in) throw InvalidInput("truncated checkpoint: " + path);
  return psi;
}

}  // namespace twocolor
