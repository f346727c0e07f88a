#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "twocolor/banded.hpp"
#include "twocolor/field.hpp"
#include "twocolor/params.hpp"
#include "twocolor/rotor.hpp"

namespace twocolor {

// Expansion coefficients over |J, M>, J = |M| .. Jmax, at time `time` (a.u.).
struct WaveFunction {
  Eigen::VectorXcd coefficients;
  int M = 0;
  double time = 0.0;

  double norm() const { return coefficients.norm(); }
};

// Field-free eigenstate Y_{J,M}.
WaveFunction basis_state(const BasisSpec& basis, int J);

enum class FieldTimeRule { midpoint, left_endpoint };

struct PropagatorConfig {
  double dt = 0.0;  // a.u.
  int krylov_dim = 12;
  double step_tolerance = 1e-10;
  FieldTimeRule field_time_rule = FieldTimeRule::midpoint;
};

void validate(const PropagatorConfig& config);

// dt = laser_period / 200 with the other defaults.
PropagatorConfig default_config(double laser_period);

struct StepStats {
  int substeps = 0;            // Krylov steps actually taken (> 1 after rejection)
  int krylov_size = 0;         // largest subspace used
  double error_estimate = 0.0;  // largest accepted local error estimate
  double norm_drift = 0.0;     // |norm - 1| before renormalization
};

// Short iterative Lanczos integrator with reusable workspace. The subspace
// grows until the a priori error bound drops below the tolerance (at most
// krylov_dim vectors) and is fully reorthogonalized.
class LanczosPropagator {
 public:
  static constexpr int kMaxKrylovDim = 32;

  explicit LanczosPropagator(PropagatorConfig config);

  const PropagatorConfig& config() const { return config_; }

  // One Krylov approximation of exp(-i H dt) psi, in place, no
  // renormalization. Returns false if the a posteriori error estimate
  // exceeds the tolerance (psi is left untouched then).
  // `share` is the fraction of the step tolerance granted to this piece.
  bool try_step(const BandedOperator& H, Eigen::VectorXcd& psi, double dt, StepStats& stats,
                double share = 1.0);

 private:
  PropagatorConfig config_;
  Eigen::MatrixXcd basis_;
  Eigen::VectorXcd work_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  using KrylovMatrix =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxKrylovDim, kMaxKrylovDim>;
  using KrylovReal = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxKrylovDim, 1>;
  using KrylovVector =
      Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxKrylovDim, 1>;
  Eigen::SelfAdjointEigenSolver<KrylovMatrix> eigen_;
};

// psi(t + dt) = exp(-i H dt) psi(t) for a fixed operator; a rejected step is
// retried as 2, 4, ... substeps, failing after 20 halvings. The result is
// renormalized and the drift is reported through `stats` when given.
WaveFunction sil_step(const BandedOperator& H, const WaveFunction& psi, double dt,
                      const PropagatorConfig& config, StepStats* stats = nullptr);

struct Trajectory {
  std::vector<double> times;                // a.u.
  std::vector<int> ks;                      // observed powers of cos(theta)
  std::vector<std::vector<double>> values;  // values[ik][sample]
  std::vector<Eigen::VectorXcd> states;     // filled only when requested

  std::int64_t steps = 0;
  std::int64_t rejected_steps = 0;
  double max_norm_drift = 0.0;
  double cumulative_norm_drift = 0.0;

  const std::vector<double>& trace(int k) const;
};

struct PropagateOptions {
  std::vector<int> ks{1, 2};
  bool store_states = false;
  // Propagate under the cycle-averaged Hamiltonian instead of H(t).
  bool time_averaged = false;
};

// Samples at t = 0, s, 2s, ... <= t_end. Each sample interval is split into
// ceil(s / dt) equal steps, so the effective step never exceeds config.dt.
Trajectory propagate(const RotorOperators& ops, const InternalParams& p,
                     const FieldSpec& spec, const InteractionFlags& flags,
                     const WaveFunction& psi0, double t_end, double sample_every,
                     const PropagatorConfig& config, const PropagateOptions& options = {});

Trajectory propagate(const InternalParams& p, const FieldSpec& spec,
                     const InteractionFlags& flags, const BasisSpec& basis,
                     const WaveFunction& psi0, double t_end, double sample_every,
                     const PropagatorConfig& config, const PropagateOptions& options = {});

// Everything needed to reproduce one fixed-t0 propagation.
struct RunDescription {
  InternalParams molecule;
  FieldSpec field;
  InteractionFlags flags;
  BasisSpec basis;
  int initial_J = 0;
  double t_end = 0.0;         // a.u.
  double sample_every = 0.0;  // a.u.
  PropagatorConfig config;
  bool time_averaged = false;
  std::vector<int> ks{1, 2};
};

void validate(const RunDescription& run);

Trajectory propagate(const RunDescription& run);
Trajectory propagate(const RunDescription& run, const RotorOperators& ops);

struct ConvergenceTargets {
  int Jmax = 40;
  double dt = 0.0;  // a.u.; 0 selects the run's configured step
  int krylov_dim = 12;
  double probe_time = units::ps_to_au(20.0);
  double tolerance = 1e-6;
  int max_Jmax = 200;
  int max_dt_halvings = 10;
};

struct ConvergenceIteration {
  int Jmax = 0;
  double dt = 0.0;
  double jmax_change = 0.0;  // max |change| after doubling Jmax
  double dt_change = 0.0;    // max |change| after halving dt (negative if not run)
};

struct ConvergenceReport {
  BasisSpec basis;
  PropagatorConfig config;
  std::vector<ConvergenceIteration> history;
};

// Doubles Jmax and halves dt until <cos> and <cos^2> over the probe window
// move by less than the tolerance.
ConvergenceReport converge(const RunDescription& run, const ConvergenceTargets& targets);

// Binary checkpoint of a wavefunction (little-endian doubles).
void save_checkpoint(const WaveFunction& psi, const std::string& path);
WaveFunction load_checkpoint(const std::string& path);

}  // namespace twocolor
