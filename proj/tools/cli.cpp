#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twocolor/config.hpp"
#include "twocolor/csv.hpp"
#include "twocolor/error.hpp"
#include "twocolor/field.hpp"
#include "twocolor/fourierfit.hpp"
#include "twocolor/observables.hpp"
#include "twocolor/parallel.hpp"
#include "twocolor/rotor.hpp"
#include "twocolor/sweep.hpp"
#include "twocolor/symmetry.hpp"

#ifndef TWOCOLOR_VERSION
#define TWOCOLOR_VERSION "unknown"
#endif

namespace twocolor::cli {

namespace {

// Command-line values that override a config file (or the defaults).
struct RunOverrides {
  std::string config;
  std::optional<double> intensity, T_fs, gamma, t_end_ps, sample_ps, dt_fs, t0_fs, step_tol;
  std::optional<std::string> delta1, delta2, flags;
  std::optional<int> Jmax, buffer, J, M, krylov, q1, q2, n_t0;
  std::vector<int> ks;
};

void add_run_options(CLI::App* cmd, RunOverrides& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config, "JSON run configuration");
  if (config_required) c->required();
  cmd->add_option("--intensity", o.intensity, "laser intensity, W/cm^2");
  cmd->add_option("--T-fs", o.T_fs, "laser period of the base frequency, fs");
  cmd->add_option("--gamma", o.gamma, "second-color fraction of the field amplitude");
  cmd->add_option("--delta1", o.delta1, "phase of the first color (number or e.g. pi/2)");
  cmd->add_option("--delta2", o.delta2, "phase of the second color (number or e.g. pi/2)");
  cmd->add_option("--flags", o.flags, "interactions: none, mu, mu+alpha, mu+alpha+beta; avg: prefix for the cycle average");
  cmd->add_option("--q1", o.q1, "frequency multiplier of the first color");
  cmd->add_option("--q2", o.q2, "frequency multiplier of the second color");
  cmd->add_option("--t-end-ps", o.t_end_ps, "propagation time, ps");
  cmd->add_option("--sample-ps", o.sample_ps, "sampling interval, ps");
  cmd->add_option("--dt-fs", o.dt_fs, "time step, fs (default: period/200)");
  cmd->add_option("--krylov", o.krylov, "Krylov subspace dimension");
  cmd->add_option("--step-tol", o.step_tol, "per-step error tolerance");
  cmd->add_option("--Jmax", o.Jmax, "basis truncation");
  cmd->add_option("--buffer", o.buffer, "extra levels used for cos^k products");
  cmd->add_option("--J", o.J, "initial J");
  cmd->add_option("--M", o.M, "initial (conserved) M");
  cmd->add_option("--n-t0", o.n_t0, "t0 quadrature nodes");
  cmd->add_option("--k", o.ks, "observable powers (1, 2, 3)")->delimiter(',');
}

RunConfig build_config(const RunOverrides& o, const std::string& default_flags) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.config.empty()) c.flags = {default_flags};
  if (o.intensity) c.intensity = *o.intensity;
  if (o.T_fs) c.T_fs = {*o.T_fs};
  if (o.gamma) c.gamma = {*o.gamma};
  if (o.delta1) c.delta1 = parse_angle(*o.delta1);
  if (o.delta2) c.delta2 = {parse_angle(*o.delta2)};
  if (o.flags) c.flags = {*o.flags};
  if (o.q1) c.q1 = *o.q1;
  if (o.q2) c.q2 = *o.q2;
  if (o.t_end_ps) c.t_end_ps = *o.t_end_ps;
  if (o.sample_ps) c.sample_every_ps = *o.sample_ps;
  if (o.dt_fs) c.dt_fs = *o.dt_fs;
  if (o.krylov) c.krylov_dim = *o.krylov;
  if (o.step_tol) c.step_tolerance = *o.step_tol;
  if (o.Jmax) c.Jmax = *o.Jmax;
  if (o.buffer) c.buffer = *o.buffer;
  if (o.J) c.J = *o.J;
  if (o.M) c.M = *o.M;
  if (o.n_t0) c.n_t0 = *o.n_t0;
  if (!o.ks.empty()) c.ks = o.ks;
  validate(c);
  return c;
}

// The single run at the first grid value of every axis.
RunDescription single_run(const RunConfig& c, const RunOverrides& o) {
  RunDescription run = make_run(c, c.T_fs.front(), c.gamma.front(), c.delta2.front(), c.flags.front());
  if (o.t0_fs) run.field.t0 = units::fs_to_au(*o.t0_fs);
  return run;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Output stream that is either a file or `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }
  void finish() {
    if (!path_.empty()) write_file_atomic(path_, buffer_.str());
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

// ---- propagate -------------------------------------------------------------

struct PropagateArgs {
  RunOverrides run;
  std::string out;
  std::string dump_hamiltonian;
  std::string checkpoint;
};

int cmd_propagate(const PropagateArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig c = build_config(a.run, "none");
  const RunDescription run = single_run(c, a.run);
  validate(run);
  const RotorOperators ops = build_rotor_operators(run.basis);

  if (!a.dump_hamiltonian.empty()) {
    const BandedOperator H = run.time_averaged
                                 ? assemble_time_averaged(ops, run.molecule, run.field, run.flags)
                                 : assemble_hamiltonian(ops, run.molecule, run.field, run.flags, 0.0);
    std::ostringstream text;
    H.write_text(text);
    write_file_atomic(a.dump_hamiltonian, text.str());
  }

  PropagateOptions opts;
  opts.ks = run.ks;
  opts.time_averaged = run.time_averaged;
  opts.store_states = !a.checkpoint.empty();
  const Trajectory traj = propagate(ops, run.molecule, run.field, run.flags,
                                    basis_state(run.basis, run.initial_J), run.t_end,
                                    run.sample_every, run.config, opts);
  if (!a.checkpoint.empty()) {
    WaveFunction last;
    last.coefficients = traj.states.back();
    last.M = run.basis.M;
    last.time = traj.times.back();
    save_checkpoint(last, a.checkpoint);
  }

  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  os << "# twocolor: propagate\n"
     << "# version: " << TWOCOLOR_VERSION << "\n"
     << "# config_hash: " << config_hash(c) << "\n"
     << "# config: " << canonical_json(c) << "\n"
     << "# t0_fs: " << format_double(units::au_to_fs(run.field.t0)) << "\n"
     << "# dt_fs: " << format_double(units::au_to_fs(run.config.dt)) << "\n"
     << "# steps: " << traj.steps << "\n"
     << "# max_norm_drift: " << format_double(traj.max_norm_drift) << "\n"
     << "# units: t_ps=ps cos_k=1\n";
  std::vector<std::string> cols{"t_ps"};
  for (int k : run.ks) cols.push_back("cos" + std::to_string(k));
  os << join(cols, ",") << "\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    os << format_double(static_cast<double>(s) * c.sample_every_ps);
    for (int k : run.ks) os << "," << format_double(traj.trace(k)[s]);
    os << "\n";
  }
  sink.finish();
  (void)err;
  return kExitOk;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  RunOverrides run;
  std::string out_dir;
  int workers = 0;
  bool force = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  RunConfig c = build_config(a.run, "mu");
  if (!a.out_dir.empty()) c.output_dir = a.out_dir;
  SweepOptions opts;
  opts.force = a.force;
  opts.workers = a.workers;
  const SweepResult r = run_sweep(c, opts);
  out << "config_hash " << r.config_hash << "\n"
      << "points " << r.points << " computed " << r.computed << " reused " << r.reused
      << " failed " << r.failures.size() << "\n";
  for (const std::string& f : r.files) out << "wrote " << f << "\n";
  for (const PointFailure& f : r.failures) {
    err << "point " << f.point.index << " (T_fs=" << f.point.T_fs << " gamma=" << f.point.gamma
        << " delta2=" << f.point.delta2 << " flags=" << f.point.flags << ") failed: " << f.message
        << "\n";
  }
  return r.ok() ? kExitOk : kExitFailure;
}

// ---- fit -------------------------------------------------------------------

struct FitArgs {
  std::string in;
  std::string out;
  int jmax = 15;
  double leakage = 1e-6;
  std::vector<double> times;
  std::optional<double> T_fs, gamma;
  std::optional<std::string> flags;
};

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  const SweepTable table = read_sweep_csv(a.in);
  const std::string k_text = table.meta_value("k");
  if (k_text.empty()) throw InvalidInput("sweep file lacks a '# k:' header line");
  const int k = std::stoi(k_text);
  const std::string q1_text = table.meta_value("q1"), q2_text = table.meta_value("q2");
  const int q1 = q1_text.empty() ? 1 : std::stoi(q1_text);
  const int q2 = q2_text.empty() ? 2 : std::stoi(q2_text);

  struct GroupKey {
    double T_fs, gamma, delta1;
    std::string flags;
    bool operator<(const GroupKey& o) const {
      return std::tie(T_fs, gamma, delta1, flags) < std::tie(o.T_fs, o.gamma, o.delta1, o.flags);
    }
  };
  std::map<GroupKey, std::vector<const SweepRow*>> groups;
  for (const SweepRow& r : table.rows) {
    if (a.T_fs && !near(r.T_fs, *a.T_fs)) continue;
    if (a.gamma && !near(r.gamma, *a.gamma)) continue;
    if (a.flags && r.flags != *a.flags) continue;
    groups[{r.T_fs, r.gamma, r.delta1, r.flags}].push_back(&r);
  }
  if (groups.empty()) throw InvalidInput("no sweep rows match the selection");
  if (groups.size() > 1) {
    err << "the sweep holds several (T_fs, gamma, delta1, flags) groups; select one with "
           "--T-fs/--gamma/--flags:\n";
    for (const auto& [g, rows] : groups) {
      err << "  T_fs=" << g.T_fs << " gamma=" << g.gamma << " delta1=" << g.delta1
          << " flags=" << g.flags << "\n";
    }
    return kExitFailure;
  }
  const auto& [key, rows] = *groups.begin();

  std::vector<double> times = a.times;
  if (times.empty()) {
    for (const SweepRow* r : rows) {
      if (std::none_of(times.begin(), times.end(), [&](double t) { return t == r->t_ps; })) {
        times.push_back(r->t_ps);
      }
    }
    std::sort(times.begin(), times.end());
  }

  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  os << "# twocolor: fit\n"
     << "# version: " << TWOCOLOR_VERSION << "\n"
     << "# source: " << a.in << "\n"
     << "# source_config_hash: " << table.meta_value("config_hash") << "\n"
     << "# T_fs: " << format_double(key.T_fs) << "\n"
     << "# gamma: " << format_double(key.gamma) << "\n"
     << "# delta1: " << format_double(key.delta1) << "\n"
     << "# flags: " << key.flags << "\n"
     << "# q1: " << q1 << "\n"
     << "# q2: " << q2 << "\n"
     << "# parity: " << to_string(fit_parity(k, q1, q2)) << "\n"
     << "# units: t=ps C_j=1 phi_j=rad residual=1\n"
     << "k,t,j,C_j,phi_j,residual\n";
  FitOptions opts;
  opts.jmax = a.jmax;
  opts.leakage_threshold = a.leakage;
  for (double t : times) {
    std::vector<std::pair<double, double>> samples;
    for (const SweepRow* r : rows) {
      if (near(r->t_ps, t)) samples.emplace_back(r->delta2, r->value);
    }
    if (samples.empty()) throw InvalidInput("no samples at t_ps=" + format_double(t));
    std::sort(samples.begin(), samples.end());
    std::vector<double> d2, v;
    for (const auto& [d, val] : samples) {
      d2.push_back(d);
      v.push_back(val);
    }
    const FourierFit fit = fit_series(d2, v, k, q1, q2, key.delta1, opts);
    for (int j = 0; j <= fit.jmax; ++j) {
      os << k << "," << format_double(t) << "," << j << "," << format_double(fit.C[j]) << ","
         << format_double(fit.phi[j]) << "," << format_double(fit.residual) << "\n";
    }
  }
  sink.finish();
  return kExitOk;
}

// ---- harmonics -------------------------------------------------------------

struct RowText {
  const char* q;
  const char* amplitude;
  const char* phase;
};

// Symbolic form of the catalog rows 1..14.
constexpr RowText kRowText[] = {
    {"q1", "eps1", "delta1"},
    {"q2", "eps2", "delta2"},
    {"2*q1", "eps1^2/2", "2*delta1"},
    {"2*q2", "eps2^2/2", "2*delta2"},
    {"q1+q2", "eps1*eps2", "delta1+delta2"},
    {"q2-q1", "eps1*eps2", "delta2-delta1"},
    {"q1", "(3/2)*eps1*eps2^2+(3/4)*eps1^3", "delta1"},
    {"q2", "(3/2)*eps1^2*eps2+(3/4)*eps2^3", "delta2"},
    {"3*q1", "eps1^3/4", "3*delta1"},
    {"3*q2", "eps2^3/4", "3*delta2"},
    {"q2+2*q1", "(3/4)*eps1^2*eps2", "delta2+2*delta1"},
    {"q2-2*q1", "(3/4)*eps1^2*eps2", "delta2-2*delta1"},
    {"2*q2+q1", "(3/4)*eps1*eps2^2", "2*delta2+delta1"},
    {"2*q2-q1", "(3/4)*eps1*eps2^2", "2*delta2-delta1"},
};

struct HarmonicsArgs {
  int q1 = 1;
  int q2 = 2;
  int power = 3;
  double eps1 = 1.0;
  double eps2 = 1.0;
  std::string delta1 = "0";
  std::string delta2 = "0";
};

int cmd_harmonics(const HarmonicsArgs& a, std::ostream& out, std::ostream&) {
  FieldSpec spec;
  spec.q1 = a.q1;
  spec.q2 = a.q2;
  spec.eps1 = a.eps1;
  spec.eps2 = a.eps2;
  spec.delta1 = parse_angle(a.delta1);
  spec.delta2 = parse_angle(a.delta2);
  validate(spec);
  const std::vector<CatalogRow> rows = harmonic_catalog(spec, a.power);

  out << "row,q_expr,q,amplitude_expr,phase_expr,amplitude,phase,kind\n";
  std::vector<std::string> dc_terms;
  double dc = 0.0;
  if (a.power == 2) {
    dc_terms.push_back("(eps1^2+eps2^2)/2");
    dc += 0.5 * (spec.eps1 * spec.eps1 + spec.eps2 * spec.eps2);
  }
  for (const CatalogRow& r : rows) {
    const RowText& t = kRowText[r.row - 1];
    const bool collapsed = r.term.is_dc();
    out << r.row << "," << t.q << "," << r.term.q << "," << t.amplitude << "," << t.phase << ","
        << format_double(r.term.amplitude) << "," << format_double(r.term.phase) << ","
        << (collapsed ? "collapsed" : "oscillatory") << "\n";
    if (collapsed) {
      dc_terms.push_back("(" + std::string(t.amplitude) + ")*cos(" + t.phase + ")");
      dc += r.term.amplitude * std::cos(r.term.phase);
    }
  }
  if (!dc_terms.empty()) {
    out << "DC,0,0," << join(dc_terms, "+") << ",0," << format_double(std::abs(dc)) << ","
        << format_double(dc < 0.0 ? units::kPi : 0.0) << ",dc\n";
  }
  return kExitOk;
}

// ---- symcheck --------------------------------------------------------------

struct SymcheckArgs {
  RunOverrides run;
  double tolerance = 1e-7;
  int workers = 0;
  std::string report;
  std::vector<std::string> kinds;
};

TransformKind parse_kind(const std::string& s) {
  for (TransformKind k : {TransformKind::phase_flip, TransformKind::field_inversion,
                          TransformKind::t0_shift, TransformKind::averaged_phase_shift,
                          TransformKind::parity_q_odd, TransformKind::mixed_parity,
                          TransformKind::approximate_mirror}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidParameter("unknown transform kind '" + s + "'");
}

int cmd_symcheck(const SymcheckArgs& a, std::ostream& out, std::ostream&) {
  RunOverrides o = a.run;
  // Fast defaults: short runs on a small basis.
  if (o.config.empty()) {
    if (!o.Jmax) o.Jmax = 20;
    if (!o.t_end_ps) o.t_end_ps = 50.0;
  }
  const RunConfig c = build_config(o, "mu");
  RunDescription run = single_run(c, o);
  run.field = reduce_q(run.field);
  std::vector<SymmetryTransform> transforms = default_transforms(run.field, c.n_t0);
  if (!a.kinds.empty()) {
    std::vector<TransformKind> wanted;
    for (const std::string& s : a.kinds) wanted.push_back(parse_kind(s));
    std::erase_if(transforms, [&](const SymmetryTransform& t) {
      return std::find(wanted.begin(), wanted.end(), t.kind) == wanted.end();
    });
  }
  const int workers = a.workers > 0 ? a.workers : default_worker_count();
  const SymcheckReport report = symcheck(run, transforms, a.tolerance, c.n_t0, workers);

  char line[256];
  std::snprintf(line, sizeof line, "%-40s %2s %-8s %4s %12s  %s\n", "transform", "k", "mode", "sign",
                "max_dev", "result");
  out << line;
  for (const SymcheckEntry& e : report.entries) {
    const char* result = e.passed ? "PASS" : (e.soft ? "SOFT" : "FAIL");
    std::snprintf(line, sizeof line, "%-40s %2d %-8s %4s %12.3e  %s\n", e.name.c_str(), e.k,
                  e.averaged ? "averaged" : "fixed", e.vanishes ? "0" : (e.expected_sign > 0 ? "+1" : "-1"),
                  e.max_deviation, result);
    out << line;
  }
  out << (report.all_passed() ? "all transforms passed" : "some transforms failed") << "\n";

  if (!a.report.empty()) {
    nlohmann::json j;
    j["tolerance"] = report.tolerance;
    j["n_t0"] = report.n_t0;
    j["all_passed"] = report.all_passed();
    j["config_hash"] = config_hash(c);
    j["q1"] = run.field.q1;
    j["q2"] = run.field.q2;
    j["entries"] = nlohmann::json::array();
    for (const SymcheckEntry& e : report.entries) {
      j["entries"].push_back({{"name", e.name},
                              {"k", e.k},
                              {"averaged", e.averaged},
                              {"soft", e.soft},
                              {"expected_sign", e.expected_sign},
                              {"vanishes", e.vanishes},
                              {"max_deviation", e.max_deviation},
                              {"passed", e.passed}});
    }
    write_file_atomic(a.report, j.dump(2) + "\n");
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

// ---- converge --------------------------------------------------------------

struct ConvergeArgs {
  RunOverrides run;
  double probe_ps = 20.0;
  double tolerance = 1e-6;
  int max_Jmax = 200;
};

int cmd_converge(const ConvergeArgs& a, std::ostream& out, std::ostream&) {
  const RunConfig c = build_config(a.run, "mu");
  const RunDescription run = single_run(c, a.run);
  ConvergenceTargets targets;
  targets.Jmax = run.basis.Jmax;
  targets.dt = run.config.dt;
  targets.krylov_dim = run.config.krylov_dim;
  targets.probe_time = units::ps_to_au(a.probe_ps);
  targets.tolerance = a.tolerance;
  targets.max_Jmax = a.max_Jmax;
  const ConvergenceReport report = converge(run, targets);
  out << "Jmax,dt_fs,jmax_change,dt_change\n";
  for (const ConvergenceIteration& it : report.history) {
    out << it.Jmax << "," << format_double(units::au_to_fs(it.dt)) << ","
        << fmt("%.3e", it.jmax_change) << "," << fmt("%.3e", it.dt_change) << "\n";
  }
  out << "settled Jmax=" << report.basis.Jmax
      << " dt_fs=" << format_double(units::au_to_fs(report.config.dt))
      << " krylov_dim=" << report.config.krylov_dim << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-color laser orientation and alignment of linear molecules", "twocolor"};
  app.set_version_flag("--version", std::string(TWOCOLOR_VERSION));
  app.require_subcommand(1);

  PropagateArgs pa;
  auto* propagate_cmd = app.add_subcommand("propagate", "single trajectory at a fixed t0");
  add_run_options(propagate_cmd, pa.run, false);
  propagate_cmd->add_option("--t0-fs", pa.run.t0_fs, "laser time offset t0, fs");
  propagate_cmd->add_option("--out", pa.out, "output CSV (default: stdout)");
  propagate_cmd->add_option("--dump-hamiltonian", pa.dump_hamiltonian, "write H(t=0) as a dense matrix");
  propagate_cmd->add_option("--checkpoint", pa.checkpoint, "write the final state to this file");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep with t0 averaging");
  add_run_options(sweep_cmd, sa.run, true);
  sweep_cmd->add_option("--out-dir", sa.out_dir, "output directory");
  sweep_cmd->add_option("--workers", sa.workers, "worker threads");
  sweep_cmd->add_flag("--force", sa.force, "recompute cached points");

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Fourier fit of a sweep over delta2");
  fit_cmd->add_option("--in", fa.in, "sweep CSV")->required();
  fit_cmd->add_option("--out", fa.out, "output CSV (default: stdout)");
  fit_cmd->add_option("--jmax", fa.jmax, "highest harmonic kept");
  fit_cmd->add_option("--leakage", fa.leakage, "forbidden-parity threshold (relative)");
  fit_cmd->add_option("--t", fa.times, "times to fit, ps (default: all)")->delimiter(',');
  fit_cmd->add_option("--T-fs", fa.T_fs, "select laser period");
  fit_cmd->add_option("--gamma", fa.gamma, "select gamma");
  fit_cmd->add_option("--flags", fa.flags, "select interaction label");

  HarmonicsArgs ha;
  auto* harmonics_cmd = app.add_subcommand("harmonics", "harmonic catalog of E^power");
  harmonics_cmd->add_option("--q1", ha.q1, "first multiplier");
  harmonics_cmd->add_option("--q2", ha.q2, "second multiplier");
  harmonics_cmd->add_option("--power", ha.power, "field power 1, 2 or 3");
  harmonics_cmd->add_option("--eps1", ha.eps1, "first amplitude");
  harmonics_cmd->add_option("--eps2", ha.eps2, "second amplitude");
  harmonics_cmd->add_option("--delta1", ha.delta1, "first phase");
  harmonics_cmd->add_option("--delta2", ha.delta2, "second phase");

  SymcheckArgs ya;
  auto* symcheck_cmd = app.add_subcommand("symcheck", "run the symmetry identity suite");
  add_run_options(symcheck_cmd, ya.run, false);
  symcheck_cmd->add_option("--t0-fs", ya.run.t0_fs, "laser time offset t0, fs");
  symcheck_cmd->add_option("--tol", ya.tolerance, "pass tolerance");
  symcheck_cmd->add_option("--workers", ya.workers, "worker threads");
  symcheck_cmd->add_option("--report", ya.report, "JSON report file");
  symcheck_cmd->add_option("--transforms", ya.kinds, "transform kinds to run")->delimiter(',');

  ConvergeArgs ca;
  auto* converge_cmd = app.add_subcommand("converge", "settle Jmax and dt on a probe run");
  add_run_options(converge_cmd, ca.run, false);
  converge_cmd->add_option("--t0-fs", ca.run.t0_fs, "laser time offset t0, fs");
  converge_cmd->add_option("--probe-ps", ca.probe_ps, "probe window, ps");
  converge_cmd->add_option("--tol", ca.tolerance, "convergence tolerance");
  converge_cmd->add_option("--max-Jmax", ca.max_Jmax, "give up beyond this Jmax");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << TWOCOLOR_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*propagate_cmd) return cmd_propagate(pa, out, err);
    if (*sweep_cmd) return cmd_sweep(sa, out, err);
    if (*fit_cmd) return cmd_fit(fa, out, err);
    if (*harmonics_cmd) return cmd_harmonics(ha, out, err);
    if (*symcheck_cmd) return cmd_symcheck(ya, out, err);
    if (*converge_cmd) return cmd_converge(ca, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace twocolor::cli
