#pragma once

#include "twocolor/field.hpp"
#include "twocolor/params.hpp"
#include "twocolor/propagator.hpp"

namespace twocolor::fixtures {

// OCS at 5e11 W/cm^2, delta2 = pi/2, sampled every ps.
inline RunDescription ocs_run(double T_fs, double gamma, double t_end_ps, int Jmax,
                              const char* flags = "mu") {
  RunDescription run;
  run.molecule = to_internal(ocs());
  const auto [e1, e2] = gamma_split(intensity_to_field(5e11).atomic, gamma);
  run.field.eps1 = e1;
  run.field.eps2 = e2;
  run.field.omega = omega_from_period(units::fs_to_au(T_fs));
  run.field.delta2 = units::kPi / 2;
  run.flags = parse_flags(flags);
  run.basis = BasisSpec{0, Jmax, 3};
  run.t_end = units::ps_to_au(t_end_ps);
  run.sample_every = units::ps_to_au(1.0);
  run.config = default_config(units::fs_to_au(T_fs));
  return run;
}

}  // namespace twocolor::fixtures
