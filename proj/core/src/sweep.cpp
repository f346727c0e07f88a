#include "twocolor/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "twocolor/error.hpp"
#include "twocolor/observables.hpp"
#include "twocolor/parallel.hpp"

#ifndef TWOCOLOR_VERSION
#define TWOCOLOR_VERSION "unknown"
#endif

namespace twocolor {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFragmentMagic = "twocolor-fragment 1";

// t0-averaged values of one grid point, per k in config order.
struct PointData {
  int n_t0 = 0;
  double dt_fs = 0.0;
  std::vector<std::vector<double>> values;  // [k index][sample]
};

fs::path cache_dir(const RunConfig& c, const std::string& hash) {
  return fs::path(c.output_dir) / ".cache" / hash;
}

fs::path fragment_path(const fs::path& dir, std::size_t index) {
  return dir / ("p" + std::to_string(index) + ".txt");
}

std::string format_fragment(const PointData& d) {
  std::string out = std::string(kFragmentMagic) + "\n";
  out += std::to_string(d.n_t0) + " " + format_double(d.dt_fs) + " " +
         std::to_string(d.values.size()) + " " +
         std::to_string(d.values.empty() ? 0 : d.values.front().size()) + "\n";
  for (const auto& v : d.values) {
    for (std::size_t s = 0; s < v.size(); ++s) out += (s ? " " : "") + format_double(v[s]);
    out += "\n";
  }
  return out;
}

std::optional<PointData> load_fragment(const fs::path& path, std::size_t n_ks, std::size_t n_samples) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string magic;
  if (!std::getline(in, magic) || magic != kFragmentMagic) return std::nullopt;
  PointData d;
  std::size_t nk = 0, ns = 0;
  if (!(in >> d.n_t0 >> d.dt_fs >> nk >> ns) || nk != n_ks || ns != n_samples) return std::nullopt;
  d.values.assign(nk, std::vector<double>(ns));
  for (auto& v : d.values) {
    for (double& x : v) {
      std::string tok;
      if (!(in >> tok)) return std::nullopt;
      char* end = nullptr;
      x = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) return std::nullopt;
    }
  }
  return d;
}

std::size_t sample_count(const RunDescription& run) {
  return static_cast<std::size_t>(std::floor(run.t_end / run.sample_every + 1e-9)) + 1;
}

}  // namespace

std::vector<GridPoint> grid_points(const RunConfig& c) {
  std::vector<GridPoint> out;
  for (double T : c.T_fs) {
    for (const std::string& f : c.flags) {
      for (double g : c.gamma) {
        for (double d : c.delta2) out.push_back({out.size(), T, f, g, d});
      }
    }
  }
  return out;
}

std::string sweep_file(const RunConfig& c, int k) {
  return (fs::path(c.output_dir) / ("sweep_k" + std::to_string(k) + ".csv")).string();
}

CsvMeta sweep_meta(const RunConfig& c, int k) {
  return {{"twocolor", "sweep"},
          {"version", TWOCOLOR_VERSION},
          {"config_hash", config_hash(c)},
          {"config", canonical_json(c)},
          {"observable", "<<cos^" + std::to_string(k) + " theta>>"},
          {"k", std::to_string(k)},
          {"q1", std::to_string(c.q1)},
          {"q2", std::to_string(c.q2)},
          {"units", "T_fs=fs gamma=1 delta1=rad delta2=rad t_ps=ps value=1 dt_fs=fs"}};
}

SweepResult run_sweep(const RunConfig& config, const SweepOptions& options) {
  validate(config);
  SweepResult result;
  result.config_hash = config_hash(config);
  const std::vector<GridPoint> points = grid_points(config);
  result.points = points.size();

  const int workers = options.workers > 0   ? options.workers
                      : config.workers > 0 ? config.workers
                                           : default_worker_count();
  const fs::path cache = cache_dir(config, result.config_hash);
  if (options.force) fs::remove_all(cache);
  fs::create_directories(cache);

  std::vector<RunDescription> runs;
  runs.reserve(points.size());
  for (const GridPoint& p : points) runs.push_back(make_run(config, p.T_fs, p.gamma, p.delta2, p.flags));
  const std::size_t n_samples = sample_count(runs.front());
  const std::size_t n_ks = config.ks.size();

  std::vector<std::optional<PointData>> data(points.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < points.size(); ++i) {
    data[i] = load_fragment(fragment_path(cache, i), n_ks, n_samples);
    if (data[i]) ++result.reused;
    else pending.push_back(i);
  }

  const RotorOperators ops = build_rotor_operators(runs.front().basis);
  auto nodes_of = [&](std::size_t i) { return runs[i].time_averaged ? 1 : config.n_t0; };

  // Batches keep a bounded number of trajectories alive at once.
  std::size_t next = 0;
  while (next < pending.size()) {
    std::vector<std::size_t> batch;
    std::size_t units = 0;
    while (next < pending.size() && (batch.empty() || units < static_cast<std::size_t>(4 * workers))) {
      batch.push_back(pending[next]);
      units += nodes_of(pending[next]);
      ++next;
    }

    struct Unit {
      std::size_t point;
      int node;
    };
    std::vector<Unit> work;
    for (std::size_t i : batch) {
      for (int n = 0; n < nodes_of(i); ++n) work.push_back({i, n});
    }
    std::vector<std::vector<std::vector<double>>> traces(work.size());
    std::vector<std::string> errors(work.size());
    parallel_for(work.size(), workers, [&](std::size_t u) {
      try {
        if (options.unit_hook) options.unit_hook(points[work[u].point], work[u].node);
        RunDescription r = runs[work[u].point];
        r.field.t0 = t0_nodes(r.field, config.n_t0)[work[u].node];
        const Trajectory traj = propagate(r, ops);
        for (int k : config.ks) traces[u].push_back(traj.trace(k));
      } catch (const std::exception& e) {
        errors[u] = e.what();
        if (errors[u].empty()) errors[u] = "unknown failure";
      }
    });

    // Ordered reduction per point.
    std::size_t u = 0;
    for (std::size_t i : batch) {
      const int n = nodes_of(i);
      std::string failure;
      PointData d;
      d.n_t0 = n;
      d.dt_fs = units::au_to_fs(runs[i].config.dt);
      d.values.assign(n_ks, std::vector<double>(n_samples, 0.0));
      for (int node = 0; node < n; ++node, ++u) {
        if (!errors[u].empty()) {
          if (failure.empty()) failure = errors[u];
          continue;
        }
        for (std::size_t kk = 0; kk < n_ks; ++kk) {
          const auto& v = traces[u][kk];
          for (std::size_t s = 0; s < n_samples && s < v.size(); ++s) d.values[kk][s] += v[s];
        }
      }
      if (!failure.empty()) {
        result.failures.push_back({points[i], failure});
        continue;
      }
      for (auto& v : d.values) {
        for (double& x : v) x /= static_cast<double>(n);
      }
      write_file_atomic(fragment_path(cache, i).string(), format_fragment(d));
      data[i] = std::move(d);
      ++result.computed;
    }
  }

  for (std::size_t kk = 0; kk < n_ks; ++kk) {
    const int k = config.ks[kk];
    std::vector<SweepRow> rows;
    rows.reserve(points.size() * n_samples);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!data[i]) continue;
      for (std::size_t s = 0; s < n_samples; ++s) {
        SweepRow r;
        r.T_fs = points[i].T_fs;
        r.gamma = points[i].gamma;
        r.delta1 = config.delta1;
        r.delta2 = points[i].delta2;
        r.flags = to_label(parse_flags_label(points[i].flags));
        r.t_ps = static_cast<double>(s) * config.sample_every_ps;
        r.value = data[i]->values[kk][s];
        r.n_t0 = data[i]->n_t0;
        r.Jmax = config.Jmax;
        r.dt_fs = data[i]->dt_fs;
        rows.push_back(std::move(r));
      }
    }
    CsvMeta meta = sweep_meta(config, k);
    meta.emplace_back("failed_points", std::to_string(result.failures.size()));
    const std::string path = sweep_file(config, k);
    write_file_atomic(path, format_sweep_csv(meta, rows));
    result.files.push_back(path);
  }
  return result;
}

}  // namespace twocolor
