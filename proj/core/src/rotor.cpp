#include "twocolor/rotor.hpp"

#include <cmath>
#include <sstream>

#include "twocolor/error.hpp"

namespace twocolor {

void validate(const BasisSpec& basis) {
  if (basis.Jmax < basis.j_min()) {
    throw InvalidParameter("Jmax must be at least |M|");
  }
  if (basis.buffer < 3) throw InvalidParameter("basis buffer must be at least 3");
}

std::string to_string(const InteractionFlags& flags) {
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += '+';
    out += name;
  };
  if (flags.mu) add("mu");
  if (flags.alpha) add("alpha");
  if (flags.beta) add("beta");
  return out.empty() ? "none" : out;
}

InteractionFlags parse_flags(const std::string& text) {
  InteractionFlags flags{false, false, false};
  if (text == "none" || text.empty()) return flags;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '+')) {
    if (item == "mu") {
      flags.mu = true;
    } else if (item == "alpha") {
      flags.alpha = true;
    } else if (item == "beta") {
      flags.beta = true;
    } else {
      throw InvalidParameter("unknown interaction '" + item + "'");
    }
  }
  return flags;
}

BandedOperator j_squared(const BasisSpec& basis) {
  validate(basis);
  std::vector<double> diag(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const double J = basis.j_min() + i;
    diag[i] = J * (J + 1.0);
  }
  return BandedOperator::diagonal(diag);
}

BandedOperator cos_matrix(const BasisSpec& basis) {
  validate(basis);
  const int n = basis.dim();
  BandedOperator c(n, 1);
  const double M2 = static_cast<double>(basis.M) * basis.M;
  for (int i = 0; i + 1 < n; ++i) {
    const double J = basis.j_min() + i;
    c.set(i, i + 1, std::sqrt(((J + 1.0) * (J + 1.0) - M2) / ((2.0 * J + 1.0) * (2.0 * J + 3.0))));
  }
  return c;
}

BandedOperator cos_power_matrix(const BasisSpec& basis, int k) {
  validate(basis);
  if (k < 1 || k > 3) {
    throw UnsupportedPower("cos^k(theta) is available for k = 1..3, got " + std::to_string(k));
  }
  if (basis.buffer < k) throw InvalidParameter("basis buffer smaller than operator power");
  BasisSpec extended = basis;
  extended.Jmax = basis.Jmax + basis.buffer;
  return matrix_power(cos_matrix(extended), k).truncated(basis.dim());
}

const BandedOperator& RotorOperators::cos_power(int k) const {
  switch (k) {
    case 1: return cos1;
    case 2: return cos2;
    case 3: return cos3;
    default:
      throw UnsupportedPower("cos^k(theta) is available for k = 1..3, got " + std::to_string(k));
  }
}

RotorOperators build_rotor_operators(const BasisSpec& basis) {
  validate(basis);
  BasisSpec extended = basis;
  extended.Jmax = basis.Jmax + basis.buffer;
  const BandedOperator c = cos_matrix(extended);
  RotorOperators ops;
  ops.basis = basis;
  ops.j2 = j_squared(basis);
  ops.cos1 = c.truncated(basis.dim());
  ops.cos2 = matrix_power(c, 2).truncated(basis.dim());
  ops.cos3 = matrix_power(c, 3).truncated(basis.dim());
  return ops;
}

HamiltonianCoefficients interaction_coefficients(const InternalParams& p,
                                                 const InteractionFlags& flags, double E,
                                                 double E2, double E3) {
  HamiltonianCoefficients h;
  if (flags.mu) h.c1 -= p.mu * E;
  if (flags.alpha) {
    h.c2 -= 0.5 * p.dalpha * E2;
    h.identity -= 0.5 * p.alpha_perp * E2;
  }
  if (flags.beta) {
    h.c3 -= p.dbeta * E3 / 6.0;
    h.c1 -= 0.5 * p.beta_perp * E3;
  }
  return h;
}

void assemble(const RotorOperators& ops, const InternalParams& p,
              const HamiltonianCoefficients& coeffs, BandedOperator& out) {
  const int n = ops.basis.dim();
  const int bw = std::min(3, std::max(n - 1, 0));
  if (out.dim() != n || out.half_bandwidth() != bw) out = BandedOperator(n, bw);

  auto d0 = out.band(0);
  auto jj = ops.j2.band(0);
  auto c2d = ops.cos2.band(0);
  for (int i = 0; i < n; ++i) d0[i] = p.B * jj[i] + coeffs.identity + coeffs.c2 * c2d[i];
  if (bw >= 1) {
    auto d1 = out.band(1);
    auto a = ops.cos1.band(1);
    auto b = ops.cos3.band(1);
    for (std::size_t i = 0; i < d1.size(); ++i) d1[i] = coeffs.c1 * a[i] + coeffs.c3 * b[i];
  }
  if (bw >= 2) {
    auto d2 = out.band(2);
    auto a = ops.cos2.band(2);
    for (std::size_t i = 0; i < d2.size(); ++i) d2[i] = coeffs.c2 * a[i];
  }
  if (bw >= 3) {
    auto d3 = out.band(3);
    auto a = ops.cos3.band(3);
    for (std::size_t i = 0; i < d3.size(); ++i) d3[i] = coeffs.c3 * a[i];
  }
}

BandedOperator assemble_hamiltonian(const RotorOperators& ops, const InternalParams& p,
                                    const FieldSpec& spec, const InteractionFlags& flags,
                                    double t) {
  const double E = evaluate(spec, t);
  BandedOperator out;
  assemble(ops, p, interaction_coefficients(p, flags, E, E * E, E * E * E), out);
  return out;
}

BandedOperator assemble_hamiltonian(const InternalParams& p, const FieldSpec& spec,
                                    const InteractionFlags& flags, const BasisSpec& basis,
                                    double t) {
  validate(spec);
  return assemble_hamiltonian(build_rotor_operators(basis), p, spec, flags, t);
}

BandedOperator assemble_time_averaged(const RotorOperators& ops, const InternalParams& p,
                                      const FieldSpec& spec, const InteractionFlags& flags) {
  const TimeAveragedCoefficients f = time_averaged_coefficients(spec);
  BandedOperator out;
  assemble(ops, p, interaction_coefficients(p, flags, 0.0, f.f1, f.f2), out);
  return out;
}

BandedOperator assemble_time_averaged(const InternalParams& p, const FieldSpec& spec,
                                      const InteractionFlags& flags, const BasisSpec& basis) {
  return assemble_time_averaged(build_rotor_operators(basis), p, spec, flags);
}

}  // namespace twocolor
