#include <benchmark/benchmark.h>

#include "twocolor/observables.hpp"
#include "twocolor/propagator.hpp"

using namespace twocolor;

namespace {

RunDescription bench_run(int Jmax, const char* flags) {
  RunDescription run;
  run.molecule = to_internal(ocs());
  const auto [e1, e2] = gamma_split(intensity_to_field(5e11).atomic, 0.5);
  run.field.eps1 = e1;
  run.field.eps2 = e2;
  run.field.omega = omega_from_period(units::fs_to_au(400.0));
  run.field.delta2 = units::kPi / 2;
  run.flags = parse_flags(flags);
  run.basis = BasisSpec{0, Jmax, 3};
  run.t_end = units::ps_to_au(10.0);
  run.sample_every = units::ps_to_au(1.0);
  run.config = default_config(units::fs_to_au(400.0));
  return run;
}

void BM_Assemble(benchmark::State& state) {
  const RunDescription run = bench_run(static_cast<int>(state.range(0)), "mu+alpha+beta");
  const RotorOperators ops = build_rotor_operators(run.basis);
  BandedOperator H;
  double t = 0.0;
  for (auto _ : state) {
    const double E = evaluate(run.field, t);
    assemble(ops, run.molecule, interaction_coefficients(run.molecule, run.flags, E, E * E, E * E * E), H);
    benchmark::DoNotOptimize(H);
    t += run.config.dt;
  }
}
BENCHMARK(BM_Assemble)->Arg(20)->Arg(40);

void BM_SilStep(benchmark::State& state) {
  const RunDescription run = bench_run(static_cast<int>(state.range(0)), "mu+alpha+beta");
  const BandedOperator H = assemble_hamiltonian(run.molecule, run.field, run.flags, run.basis, 100.0);
  WaveFunction psi = basis_state(run.basis, 0);
  for (auto _ : state) {
    psi = sil_step(H, psi, run.config.dt, run.config);
    benchmark::DoNotOptimize(psi.coefficients.data());
  }
}
BENCHMARK(BM_SilStep)->Arg(20)->Arg(40);

// 10 ps of the dipole-only Hamiltonian: 5000 steps.
void BM_Propagate10ps(benchmark::State& state) {
  const RunDescription run = bench_run(static_cast<int>(state.range(0)), "mu");
  for (auto _ : state) benchmark::DoNotOptimize(propagate(run));
}
BENCHMARK(BM_Propagate10ps)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_T0Average(benchmark::State& state) {
  RunDescription run = bench_run(20, "mu+alpha");
  run.t_end = units::ps_to_au(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(t0_average(run, 8, 1));
}
BENCHMARK(BM_T0Average)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
