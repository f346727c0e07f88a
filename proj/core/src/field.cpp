#include "twocolor/field.hpp"

#include <array>
#include <cmath>
#include <string>

#include "twocolor/error.hpp"
#include "twocolor/params.hpp"

namespace twocolor {
namespace {

constexpr double kTwoPi = 2.0 * units::kPi;

constexpr std::array<HarmonicIndex, 14> kCatalog = {{
    {1, 1, 0},
    {2, 0, 1},
    {3, 2, 0},
    {4, 0, 2},
    {5, 1, 1},
    {6, -1, 1},
    {7, 1, 0},
    {8, 0, 1},
    {9, 3, 0},
    {10, 0, 3},
    {11, 2, 1},
    {12, -2, 1},
    {13, 1, 2},
    {14, -1, 2},
}};

double row_amplitude(int row, double e1, double e2) {
  switch (row) {
    case 1: return e1;
    case 2: return e2;
    case 3: return 0.5 * e1 * e1;
    case 4: return 0.5 * e2 * e2;
    case 5:
    case 6: return e1 * e2;
    case 7: return 1.5 * e1 * e2 * e2 + 0.75 * e1 * e1 * e1;
    case 8: return 1.5 * e1 * e1 * e2 + 0.75 * e2 * e2 * e2;
    case 9: return 0.25 * e1 * e1 * e1;
    case 10: return 0.25 * e2 * e2 * e2;
    case 11:
    case 12: return 0.75 * e1 * e1 * e2;
    case 13:
    case 14: return 0.75 * e1 * e2 * e2;
    default: throw InvalidParameter("no catalog row " + std::to_string(row));
  }
}

std::pair<std::size_t, std::size_t> rows_for_power(int power) {
  switch (power) {
    case 1: return {0, 2};
    case 2: return {2, 6};
    case 3: return {6, 14};
    default:
      throw UnsupportedPower("field powers 1..3 are supported, got " + std::to_string(power));
  }
}

// Signed value of a constant term, folded to (|value|, {0, pi}).
HarmonicTerm dc_term(double value) {
  HarmonicTerm t;
  t.q = 0;
  t.amplitude = std::abs(value);
  t.phase = value < 0.0 ? units::kPi : 0.0;
  return t;
}

}  // namespace

void validate(const FieldSpec& spec) {
  if (spec.q1 < 1 || spec.q2 < 1) {
    throw InvalidParameter("frequency multipliers must be positive integers");
  }
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) {
    throw InvalidParameter("base angular frequency must be positive");
  }
  for (double v : {spec.eps1, spec.eps2, spec.delta1, spec.delta2, spec.t0}) {
    if (!std::isfinite(v)) throw InvalidParameter("field parameters must be finite");
  }
}

double omega_from_period(double period) {
  if (!(period > 0.0)) throw InvalidParameter("laser period must be positive");
  return kTwoPi / period;
}

double wrap_phase(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double evaluate(const FieldSpec& spec, double t) {
  const double s = t + spec.t0;
  return spec.eps1 * std::cos(spec.q1 * spec.omega * s + spec.delta1) +
         spec.eps2 * std::cos(spec.q2 * spec.omega * s + spec.delta2);
}

std::pair<double, double> gamma_split(double E0, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidParameter("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  if (!(E0 >= 0.0)) throw InvalidParameter("field strength must be nonnegative");
  return {(1.0 - gamma) * E0, gamma * E0};
}

std::span<const HarmonicIndex> harmonic_indices(int max_power) {
  const auto [first, last] = rows_for_power(max_power);
  (void)first;
  return std::span<const HarmonicIndex>(kCatalog.data(), last);
}

std::vector<CatalogRow> harmonic_catalog(const FieldSpec& spec, int power) {
  const auto [first, last] = rows_for_power(power);
  validate(spec);
  std::vector<CatalogRow> rows;
  rows.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    const HarmonicIndex& idx = kCatalog[i];
    int q = idx.a * spec.q1 + idx.b * spec.q2;
    double phase = idx.a * spec.delta1 + idx.b * spec.delta2;
    double amplitude = row_amplitude(idx.row, spec.eps1, spec.eps2);
    if (q < 0) {
      q = -q;
      phase = -phase;
    }
    if (amplitude < 0.0) {
      amplitude = -amplitude;
      phase += units::kPi;
    }
    rows.push_back(CatalogRow{idx.row, HarmonicTerm{q, amplitude, wrap_phase(phase)}});
  }
  return rows;
}

std::vector<HarmonicTerm> harmonic_decomposition(const FieldSpec& spec, int power) {
  const std::vector<CatalogRow> rows = harmonic_catalog(spec, power);

  bool has_dc = power == 2;
  double dc = power == 2 ? 0.5 * (spec.eps1 * spec.eps1 + spec.eps2 * spec.eps2) : 0.0;
  std::vector<HarmonicTerm> oscillatory;
  for (const CatalogRow& r : rows) {
    if (r.term.is_dc()) {
      has_dc = true;
      dc += r.term.amplitude * std::cos(r.term.phase);
      continue;
    }
    bool merged = false;
    for (HarmonicTerm& t : oscillatory) {
      if (t.q == r.term.q && t.phase == r.term.phase) {
        t.amplitude += r.term.amplitude;
        merged = true;
        break;
      }
    }
    if (!merged) oscillatory.push_back(r.term);
  }

  std::vector<HarmonicTerm> out;
  out.reserve(oscillatory.size() + 1);
  if (has_dc) out.push_back(dc_term(dc));
  out.insert(out.end(), oscillatory.begin(), oscillatory.end());
  return out;
}

double evaluate_terms(std::span<const HarmonicTerm> terms, const FieldSpec& spec, double t) {
  const double s = t + spec.t0;
  double sum = 0.0;
  for (const HarmonicTerm& term : terms) {
    sum += term.amplitude * std::cos(term.q * spec.omega * s + term.phase);
  }
  return sum;
}

TimeAveragedCoefficients time_averaged_coefficients(const FieldSpec& spec) {
  validate(spec);
  const double e1 = spec.eps1;
  const double e2 = spec.eps2;
  TimeAveragedCoefficients c;
  c.f1 = 0.5 * (e1 * e1 + e2 * e2);
  if (spec.q1 == spec.q2) c.f1 += e1 * e2 * std::cos(spec.delta1 - spec.delta2);
  if (2 * spec.q1 == spec.q2) {
    c.f2 += 0.75 * e1 * e1 * e2 * std::cos(2.0 * spec.delta1 - spec.delta2);
  }
  if (spec.q1 == 2 * spec.q2) {
    c.f2 += 0.75 * e1 * e2 * e2 * std::cos(spec.delta1 - 2.0 * spec.delta2);
  }
  return c;
}

}  // namespace twocolor
