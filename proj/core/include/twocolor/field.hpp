#pragma once

#include <span>
#include <utility>
#include <vector>

namespace twocolor {

// Biharmonic field E(t) = sum_i eps_i cos(q_i omega (t + t0) + delta_i).
// Everything in atomic units; eps may be negative under symmetry maps.
struct FieldSpec {
  double eps1 = 0.0;
  double eps2 = 0.0;
  int q1 = 1;
  int q2 = 2;
  double omega = 1.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double t0 = 0.0;

  bool operator==(const FieldSpec&) const = default;
};

void validate(const FieldSpec& spec);

// Angular frequency of a laser whose base period is `period` (same time unit).
double omega_from_period(double period);

double evaluate(const FieldSpec& spec, double t);

// (eps1, eps2) = ((1 - gamma) E0, gamma E0).
std::pair<double, double> gamma_split(double E0, double gamma);

// One cosine a cos(q omega (t + t0) + phase); q == 0 marks a constant term
// whose value is a cos(phase) with phase in {0, pi}.
struct HarmonicTerm {
  int q = 0;
  double amplitude = 0.0;
  double phase = 0.0;

  bool is_dc() const { return q == 0; }
};

// A row of the harmonic catalog of E, E^2 and E^3: multiplier and phase are
// a*(q1, delta1) + b*(q2, delta2).
struct HarmonicIndex {
  int row;  // catalog row, 1..14
  int a;
  int b;
};

// Catalog rows carried by the interaction terms up to the given power
// (2 rows for E, 6 for E and E^2, 14 for E, E^2 and E^3).
std::span<const HarmonicIndex> harmonic_indices(int max_power);

struct CatalogRow {
  int row = 0;
  HarmonicTerm term;
};

// Raw catalog rows of E^power in table order, normalized (nonnegative
// multiplier and amplitude, phase wrapped to [0, 2pi)) but not merged. Rows
// whose multiplier vanishes for this (q1, q2) are reported with q == 0.
// The constant part (eps1^2 + eps2^2)/2 of E^2 is not a catalog row.
std::vector<CatalogRow> harmonic_catalog(const FieldSpec& spec, int power);

// Exact expansion of E(t)^power: a single DC term first (when present),
// then the oscillatory terms in catalog order. Zero-multiplier rows are
// folded into the DC term; rows sharing both multiplier and phase are merged.
std::vector<HarmonicTerm> harmonic_decomposition(const FieldSpec& spec, int power);

double evaluate_terms(std::span<const HarmonicTerm> terms, const FieldSpec& spec, double t);

struct TimeAveragedCoefficients {
  double f1 = 0.0;  // cycle average of E^2
  double f2 = 0.0;  // cycle average of E^3
};

TimeAveragedCoefficients time_averaged_coefficients(const FieldSpec& spec);

// Wraps an angle to [0, 2pi).
double wrap_phase(double phase);

}  // namespace twocolor
