#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocolor/field.hpp"
#include "twocolor/propagator.hpp"

namespace twocolor {

struct ReducedQ {
  int q1 = 1;
  int q2 = 1;
  double omega = 1.0;
};

// Divides (q1, q2) by their gcd g and multiplies omega by g; E(t) is unchanged.
ReducedQ reduce_q(int q1, int q2, double omega);
FieldSpec reduce_q(const FieldSpec& spec);

enum class TransformKind {
  phase_flip,            // (eps_i, delta_i) -> ((-1)^n_i eps_i, delta_i + n_i pi)
  field_inversion,       // eps_i -> -eps_i
  t0_shift,              // t0 -> t0 + tau, delta_i -> delta_i - q_i omega tau
  averaged_phase_shift,  // delta_i -> delta_i + q_i Delta (t0-averaged only)
  parity_q_odd,          // q1, q2 odd: even k invariant, odd k vanish
  mixed_parity,          // q1 odd, q2 even: delta1 + n1 pi/2, delta2 + n2 pi
  approximate_mirror,    // delta2 -> pi - delta2; approximate, never asserted
};

std::string to_string(TransformKind kind);

struct TransformParameters {
  int n1 = 0;
  int n2 = 0;
  double tau = 0.0;    // a.u.
  double Delta = 0.0;  // rad
};

// A field map plus the expected multiplier (-1)^(k * sign_exponent) on
// <cos^k>, or on the t0-averaged <<cos^k>> when `averaged` is set.
struct SymmetryTransform {
  std::string name;
  TransformKind kind = TransformKind::phase_flip;
  int q1 = 1;
  int q2 = 2;

  int eps1_sign = 1;
  int eps2_sign = 1;
  double delta1_shift = 0.0;
  double delta2_shift = 0.0;
  double tau = 0.0;
  bool mirror_delta2 = false;

  int sign_exponent = 0;
  bool averaged = false;
  // Odd-k values vanish identically; the check compares both traces to zero.
  bool odd_k_vanishes = false;
  // Reported, never counted as a failure.
  bool soft = false;

  int sign_rule(int k) const { return ((k * sign_exponent) % 2 == 0) ? 1 : -1; }
  FieldSpec apply(const FieldSpec& spec) const;
};

// Throws InvalidUse when a parity kind does not fit (q1, q2), which must
// already be coprime.
SymmetryTransform make_transform(TransformKind kind, const TransformParameters& params, int q1,
                                 int q2);

// The catalog applicable to a coprime (q1, q2), with parameters chosen so
// that averaged shifts map a t0 grid of n_t0 nodes onto itself.
std::vector<SymmetryTransform> default_transforms(const FieldSpec& spec, int n_t0);

struct DiophantineSolution {
  std::vector<int> n;
  // n . delta = m xi12, when the vector came from catalog rows.
  std::optional<int> m;
};

// All nonzero n with |n_j| <= bound, n . q = 0 and leftmost nonzero
// component positive, in lexicographic order.
std::vector<DiophantineSolution> diophantine_solutions(const std::vector<int>& q, int bound);

// Same over the catalog rows (q_j = a q1 + b q2), tagging each solution with m.
std::vector<DiophantineSolution> diophantine_solutions(const std::vector<HarmonicIndex>& rows,
                                                       int q1, int q2, int bound);

struct SymcheckEntry {
  std::string name;
  int k = 1;
  bool averaged = false;
  bool soft = false;
  int expected_sign = 1;
  bool vanishes = false;
  double max_deviation = 0.0;
  bool passed = false;
};

struct SymcheckReport {
  double tolerance = 0.0;
  int n_t0 = 0;
  std::vector<SymcheckEntry> entries;

  bool all_passed() const;
};

// Runs the original and every transformed configuration (concurrently) and
// compares the traces of each k in run.ks against sign_rule(k) * original.
SymcheckReport symcheck(const RunDescription& run, const std::vector<SymmetryTransform>& transforms,
                        double tolerance, int n_t0, int workers);

}  // namespace twocolor
