#include "twocolor/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twocolor/error.hpp"
#include "twocolor/observables.hpp"
#include "twocolor/parallel.hpp"

namespace twocolor {

namespace {

constexpr double kPi = units::kPi;

bool is_odd(int v) { return v % 2 != 0; }

}  // namespace

ReducedQ reduce_q(int q1, int q2, double omega) {
  if (q1 < 1 || q2 < 1) throw InvalidParameter("harmonic multipliers must be positive");
  if (!(omega > 0.0)) throw InvalidParameter("omega must be positive");
  const int g = std::gcd(q1, q2);
  return {q1 / g, q2 / g, omega * g};
}

FieldSpec reduce_q(const FieldSpec& spec) {
  const ReducedQ r = reduce_q(spec.q1, spec.q2, spec.omega);
  FieldSpec out = spec;
  out.q1 = r.q1;
  out.q2 = r.q2;
  out.omega = r.omega;
  return out;
}

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::phase_flip: return "phase_flip";
    case TransformKind::field_inversion: return "field_inversion";
    case TransformKind::t0_shift: return "t0_shift";
    case TransformKind::averaged_phase_shift: return "averaged_phase_shift";
    case TransformKind::parity_q_odd: return "parity_q_odd";
    case TransformKind::mixed_parity: return "mixed_parity";
    case TransformKind::approximate_mirror: return "approximate_mirror";
  }
  return "unknown";
}

FieldSpec SymmetryTransform::apply(const FieldSpec& spec) const {
  if (spec.q1 != q1 || spec.q2 != q2) {
    throw InvalidUse("transform " + name + " was built for different harmonic multipliers");
  }
  FieldSpec out = spec;
  out.eps1 = eps1_sign * spec.eps1;
  out.eps2 = eps2_sign * spec.eps2;
  out.delta1 = spec.delta1 + delta1_shift;
  out.delta2 = (mirror_delta2 ? kPi - spec.delta2 : spec.delta2) + delta2_shift;
  if (tau != 0.0) {
    out.t0 = spec.t0 + tau;
    out.delta1 -= q1 * spec.omega * tau;
    out.delta2 -= q2 * spec.omega * tau;
  }
  return out;
}

SymmetryTransform make_transform(TransformKind kind, const TransformParameters& params, int q1,
                                 int q2) {
  if (q1 < 1 || q2 < 1) throw InvalidParameter("harmonic multipliers must be positive");
  SymmetryTransform t;
  t.kind = kind;
  t.q1 = q1;
  t.q2 = q2;
  const std::string n12 = "(n1=" + std::to_string(params.n1) + ",n2=" + std::to_string(params.n2) + ")";
  switch (kind) {
    case TransformKind::phase_flip:
      t.name = "phase_flip" + n12;
      t.eps1_sign = is_odd(params.n1) ? -1 : 1;
      t.eps2_sign = is_odd(params.n2) ? -1 : 1;
      t.delta1_shift = params.n1 * kPi;
      t.delta2_shift = params.n2 * kPi;
      break;
    case TransformKind::field_inversion:
      t.name = "field_inversion";
      t.eps1_sign = -1;
      t.eps2_sign = -1;
      t.sign_exponent = 1;
      break;
    case TransformKind::t0_shift:
      t.name = "t0_shift(tau=" + std::to_string(params.tau) + ")";
      t.tau = params.tau;
      break;
    case TransformKind::averaged_phase_shift:
      t.name = "averaged_phase_shift(Delta=" + std::to_string(params.Delta) + ")";
      t.delta1_shift = q1 * params.Delta;
      t.delta2_shift = q2 * params.Delta;
      t.averaged = true;
      break;
    case TransformKind::parity_q_odd: {
      if (!is_odd(q1) || !is_odd(q2) || std::gcd(q1, q2) != 1) {
        throw InvalidUse("parity_q_odd needs coprime odd q1 and q2");
      }
      t.name = "parity_q_odd(n1=" + std::to_string(params.n1) + ")";
      const int s = ((q2 - q1) / 2) % 2 == 0 ? 1 : -1;
      t.delta1_shift = params.n1 * kPi / 2.0;
      t.delta2_shift = (2 - s) * params.n1 * kPi / 2.0;
      t.averaged = true;
      t.odd_k_vanishes = true;
      break;
    }
    case TransformKind::mixed_parity:
      if (!is_odd(q1) || is_odd(q2) || std::gcd(q1, q2) != 1) {
        throw InvalidUse("mixed_parity needs coprime q1 odd and q2 even");
      }
      t.name = "mixed_parity" + n12;
      t.delta1_shift = params.n1 * kPi / 2.0;
      t.delta2_shift = params.n2 * kPi;
      t.sign_exponent = params.n1 * q2 / 2 + params.n2 * q1;
      t.averaged = true;
      break;
    case TransformKind::approximate_mirror:
      t.name = "approximate_mirror";
      t.mirror_delta2 = true;
      t.averaged = true;
      t.soft = true;
      break;
  }
  return t;
}

std::vector<SymmetryTransform> default_transforms(const FieldSpec& spec, int n_t0) {
  const int q1 = spec.q1, q2 = spec.q2;
  if (std::gcd(q1, q2) != 1) throw InvalidUse("reduce (q1, q2) before building the catalog");
  std::vector<SymmetryTransform> out;
  out.push_back(make_transform(TransformKind::phase_flip, {1, 0}, q1, q2));
  out.push_back(make_transform(TransformKind::phase_flip, {0, 1}, q1, q2));
  out.push_back(make_transform(TransformKind::phase_flip, {1, 1}, q1, q2));
  out.push_back(make_transform(TransformKind::field_inversion, {}, q1, q2));
  // An arbitrary shift, deliberately off any node.
  TransformParameters shift;
  shift.tau = 0.37 * 2.0 * kPi / spec.omega;
  out.push_back(make_transform(TransformKind::t0_shift, shift, q1, q2));

  TransformParameters delta;
  delta.Delta = 2.0 * kPi * 3.0 / n_t0;
  out.push_back(make_transform(TransformKind::averaged_phase_shift, delta, q1, q2));
  if (is_odd(q1) && is_odd(q2)) {
    out.push_back(make_transform(TransformKind::parity_q_odd, {1, 0}, q1, q2));
  } else if (is_odd(q1)) {
    out.push_back(make_transform(TransformKind::mixed_parity, {0, 1}, q1, q2));
    out.push_back(make_transform(TransformKind::mixed_parity, {1, 0}, q1, q2));
    out.push_back(make_transform(TransformKind::mixed_parity, {1, 1}, q1, q2));
  }
  out.push_back(make_transform(TransformKind::approximate_mirror, {}, q1, q2));
  return out;
}

std::vector<DiophantineSolution> diophantine_solutions(const std::vector<int>& q, int bound) {
  if (bound < 1) throw InvalidParameter("component bound must be at least 1");
  const std::size_t s = q.size();
  std::vector<DiophantineSolution> out;
  if (s == 0) return out;

  // reach[j]: largest |sum| the components j.. can still contribute.
  std::vector<long long> reach(s + 1, 0);
  for (std::size_t j = s; j-- > 0;) reach[j] = reach[j + 1] + static_cast<long long>(bound) * std::abs(q[j]);

  std::vector<int> n(s, 0);
  auto dfs = [&](auto&& self, std::size_t j, long long sum, bool nonzero) -> void {
    if (std::llabs(sum) > reach[j]) return;
    if (j == s) {
      if (sum == 0 && nonzero) out.push_back({n, std::nullopt});
      return;
    }
    // Before the first nonzero entry only nonnegative values are allowed.
    const int lo = nonzero ? -bound : 0;
    for (int v = lo; v <= bound; ++v) {
      n[j] = v;
      self(self, j + 1, sum + static_cast<long long>(v) * q[j], nonzero || v != 0);
    }
    n[j] = 0;
  };
  dfs(dfs, 0, 0, false);
  return out;
}

std::vector<DiophantineSolution> diophantine_solutions(const std::vector<HarmonicIndex>& rows,
                                                       int q1, int q2, int bound) {
  if (q1 < 1 || q2 < 1 || std::gcd(q1, q2) != 1) {
    throw InvalidParameter("catalog solutions need coprime positive q1, q2");
  }
  std::vector<int> q;
  q.reserve(rows.size());
  for (const HarmonicIndex& r : rows) q.push_back(r.a * q1 + r.b * q2);
  std::vector<DiophantineSolution> out = diophantine_solutions(q, bound);
  for (DiophantineSolution& sol : out) {
    long long na = 0, nb = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      na += static_cast<long long>(sol.n[j]) * rows[j].a;
      nb += static_cast<long long>(sol.n[j]) * rows[j].b;
    }
    // n.q = na q1 + nb q2 = 0 with gcd(q1, q2) = 1 forces nb = m q1, na = -m q2.
    if (nb % q1 != 0 || na != -(nb / q1) * q2) {
      throw Error("catalog solution does not collapse onto xi12");
    }
    sol.m = static_cast<int>(nb / q1);
  }
  return out;
}

bool SymcheckReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SymcheckEntry& e) { return e.passed || e.soft; });
}

SymcheckReport symcheck(const RunDescription& run, const std::vector<SymmetryTransform>& transforms,
                        double tolerance, int n_t0, int workers) {
  validate(run);
  if (!(tolerance > 0.0)) throw InvalidParameter("tolerance must be positive");
  const bool any_averaged = std::any_of(transforms.begin(), transforms.end(),
                                        [](const SymmetryTransform& t) { return t.averaged; });
  const int nodes_per_avg = run.time_averaged ? 1 : n_t0;
  if (any_averaged && !run.time_averaged && n_t0 < 2) {
    throw InvalidParameter("t0 average needs at least 2 nodes");
  }

  // Configuration 0 is the original; configuration i + 1 is transforms[i].
  std::vector<FieldSpec> configs{run.field};
  for (const SymmetryTransform& t : transforms) configs.push_back(t.apply(run.field));

  // Flatten every propagation into one pool: fixed-t0 runs use one node,
  // averaged runs use the full grid.
  struct Job {
    std::size_t config;
    bool averaged;
    int node;
  };
  std::vector<Job> jobs;
  auto needs = [&](std::size_t c, bool averaged) {
    if (c == 0) {
      return std::any_of(transforms.begin(), transforms.end(),
                         [&](const SymmetryTransform& t) { return t.averaged == averaged; });
    }
    return transforms[c - 1].averaged == averaged;
  };
  for (std::size_t c = 0; c < configs.size(); ++c) {
    if (needs(c, false)) jobs.push_back({c, false, -1});
    if (needs(c, true)) {
      for (int i = 0; i < nodes_per_avg; ++i) jobs.push_back({c, true, i});
    }
  }

  const RotorOperators ops = build_rotor_operators(run.basis);
  std::vector<Trajectory> results(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    RunDescription r = run;
    r.field = configs[jobs[j].config];
    if (jobs[j].averaged) {
      const std::vector<double> nodes = t0_nodes(r.field, std::max(nodes_per_avg, 2));
      r.field.t0 = nodes[jobs[j].node];
    }
    results[j] = propagate(r, ops);
  });

  // Assemble per-configuration traces; averaged sums run in node order.
  auto trace = [&](std::size_t c, bool averaged, int k) {
    std::vector<double> out;
    int count = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].config != c || jobs[j].averaged != averaged) continue;
      const auto& v = results[j].trace(k);
      if (out.empty()) out.assign(v.size(), 0.0);
      for (std::size_t s = 0; s < v.size(); ++s) out[s] += v[s];
      ++count;
    }
    if (averaged) {
      for (double& v : out) v /= static_cast<double>(count);
    }
    return out;
  };

  SymcheckReport report;
  report.tolerance = tolerance;
  report.n_t0 = n_t0;
  for (std::size_t i = 0; i < transforms.size(); ++i) {
    const SymmetryTransform& t = transforms[i];
    for (int k : run.ks) {
      SymcheckEntry e;
      e.name = t.name;
      e.k = k;
      e.averaged = t.averaged;
      e.soft = t.soft;
      e.expected_sign = t.sign_rule(k);
      e.vanishes = t.odd_k_vanishes && is_odd(k);
      const std::vector<double> a = trace(0, t.averaged, k);
      const std::vector<double> b = trace(i + 1, t.averaged, k);
      for (std::size_t s = 0; s < a.size(); ++s) {
        const double dev = e.vanishes ? std::max(std::abs(a[s]), std::abs(b[s]))
                                      : std::abs(b[s] - e.expected_sign * a[s]);
        e.max_deviation = std::max(e.max_deviation, dev);
      }
      e.passed = e.max_deviation < tolerance;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

}  // namespace twocolor
