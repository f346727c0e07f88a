#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "twocolor/config.hpp"
#include "twocolor/csv.hpp"

namespace twocolor {

// One grid point, in file order: T_fs outermost, then flags, gamma, delta2.
struct GridPoint {
  std::size_t index = 0;
  double T_fs = 0.0;
  std::string flags;
  double gamma = 0.0;
  double delta2 = 0.0;
};

std::vector<GridPoint> grid_points(const RunConfig& config);

struct PointFailure {
  GridPoint point;
  std::string message;
};

struct SweepOptions {
  bool force = false;  // recompute even when cached results exist
  int workers = 0;     // 0: config.workers, then the environment default
  // Called before each (point, t0 node) unit; an exception fails that point.
  std::function<void(const GridPoint&, int node)> unit_hook;
};

struct SweepResult {
  std::string config_hash;
  std::vector<std::string> files;  // one per k, in config.ks order
  std::size_t points = 0;
  std::size_t computed = 0;  // points propagated in this call
  std::size_t reused = 0;    // points taken from the cache
  std::vector<PointFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Runs every grid point's t0 average (work unit = grid point x t0 node,
// statically partitioned over the workers). Finished points are cached under
// <output_dir>/.cache/<hash>/ so an interrupted sweep resumes; output files
// are <output_dir>/sweep_k<k>.csv. Failed points are reported, not thrown.
SweepResult run_sweep(const RunConfig& config, const SweepOptions& options = {});

// Header lines shared by sweep files.
CsvMeta sweep_meta(const RunConfig& config, int k);

std::string sweep_file(const RunConfig& config, int k);

}  // namespace twocolor
