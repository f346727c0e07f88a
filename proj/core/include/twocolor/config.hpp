#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twocolor/params.hpp"
#include "twocolor/propagator.hpp"

namespace twocolor {

// A sweep experiment. Times are in the units named by each field; the
// interaction labels are "mu", "mu+alpha", "mu+alpha+beta" (or "none"),
// optionally prefixed "avg:" for the cycle-averaged Hamiltonian.
struct RunConfig {
  MoleculeParams molecule = ocs();
  double intensity = 5e11;  // W/cm^2
  std::vector<double> gamma{0.5};
  std::vector<double> delta2{units::kPi / 2.0};
  double delta1 = 0.0;
  std::vector<double> T_fs{400.0};
  int q1 = 1;
  int q2 = 2;
  std::vector<std::string> flags{"mu"};
  double t_end_ps = 100.0;
  double sample_every_ps = 1.0;
  int n_t0 = 32;
  int J = 0;
  int M = 0;
  int Jmax = 40;
  int buffer = 3;
  double dt_fs = 0.0;  // 0: laser period / 200
  int krylov_dim = 12;
  double step_tolerance = 1e-10;
  FieldTimeRule field_time_rule = FieldTimeRule::midpoint;
  std::vector<int> ks{1, 2};
  std::string output_dir = "out";
  int workers = 0;  // 0: environment / hardware default
};

// Interaction label split into flags and the time-averaged marker.
struct FlagsLabel {
  InteractionFlags flags;
  bool time_averaged = false;
};
FlagsLabel parse_flags_label(const std::string& label);
std::string to_label(const FlagsLabel& label);

// Parses the JSON document; unknown keys are rejected. Angles may be given
// as numbers or as strings such as "pi/2" or "3pi/4"; grids as arrays or as
// {"start", "stop", "count", "endpoint"} objects.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

void validate(const RunConfig& config);

// Canonical JSON of everything that affects results (output_dir and workers
// excluded), keys sorted, on one line.
std::string canonical_json(const RunConfig& config);

// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);
std::uint64_t fnv1a64(std::string_view data);

// Angle literal: number, "pi", "-pi/2", "3pi/4", "0.25*pi".
double parse_angle(std::string_view text);

// The fixed-t0 run of one grid point (t0 = 0).
RunDescription make_run(const RunConfig& config, double T_fs, double gamma, double delta2,
                        const std::string& flags_label);

}  // namespace twocolor
