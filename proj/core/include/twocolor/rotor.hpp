#pragma once

#include <string>
#include <vector>

#include "twocolor/banded.hpp"
#include "twocolor/field.hpp"
#include "twocolor/params.hpp"

namespace twocolor {

// Field-free basis |J, M> at fixed M, J = |M| .. Jmax. `buffer` extra levels
// are used when forming powers of cos(theta) so the truncated block is exact.
struct BasisSpec {
  int M = 0;
  int Jmax = 40;
  int buffer = 3;

  int dim() const { return Jmax - (M < 0 ? -M : M) + 1; }
  int j_min() const { return M < 0 ? -M : M; }

  bool operator==(const BasisSpec&) const = default;
};

void validate(const BasisSpec& basis);

struct InteractionFlags {
  bool mu = true;
  bool alpha = false;
  bool beta = false;

  bool operator==(const InteractionFlags&) const = default;
};

// "mu", "mu+alpha", "mu+alpha+beta", ...; "none" when all are off.
std::string to_string(const InteractionFlags& flags);
InteractionFlags parse_flags(const std::string& text);

// Diagonal J(J+1) (dimensionless; B is applied at assembly).
BandedOperator j_squared(const BasisSpec& basis);

// <J,M| cos(theta) |J+1,M> = sqrt(((J+1)^2 - M^2) / ((2J+1)(2J+3))).
BandedOperator cos_matrix(const BasisSpec& basis);

// cos^k(theta), k in {1,2,3}: k-th power of cos_matrix on Jmax + buffer,
// truncated back to Jmax.
BandedOperator cos_power_matrix(const BasisSpec& basis, int k);

// J(J+1) and cos^k(theta) on one basis, built once and shared read-only.
struct RotorOperators {
  BasisSpec basis;
  BandedOperator j2;
  BandedOperator cos1;
  BandedOperator cos2;
  BandedOperator cos3;

  const BandedOperator& cos_power(int k) const;
};

RotorOperators build_rotor_operators(const BasisSpec& basis);

// H = B J^2 + identity*I + c1 cos + c2 cos^2 + c3 cos^3.
struct HamiltonianCoefficients {
  double identity = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

// Coefficients of -mu cos E - (dalpha cos^2 + alpha_perp) E2 / 2
// - (dbeta cos^3 + 3 beta_perp cos) E3 / 6, gated by flags. For the full
// Hamiltonian E2 = E^2 and E3 = E^3; the time-averaged one uses f1 and f2.
HamiltonianCoefficients interaction_coefficients(const InternalParams& p,
                                                 const InteractionFlags& flags, double E,
                                                 double E2, double E3);

// Writes the assembled operator into `out` (reusing its storage when the
// shape already matches).
void assemble(const RotorOperators& ops, const InternalParams& p,
              const HamiltonianCoefficients& coeffs, BandedOperator& out);

BandedOperator assemble_hamiltonian(const InternalParams& p, const FieldSpec& spec,
                                    const InteractionFlags& flags, const BasisSpec& basis,
                                    double t);
BandedOperator assemble_hamiltonian(const RotorOperators& ops, const InternalParams& p,
                                    const FieldSpec& spec, const InteractionFlags& flags,
                                    double t);

// Cycle-averaged Hamiltonian; the dipole term averages to zero.
BandedOperator assemble_time_averaged(const InternalParams& p, const FieldSpec& spec,
                                      const InteractionFlags& flags, const BasisSpec& basis);
BandedOperator assemble_time_averaged(const RotorOperators& ops, const InternalParams& p,
                                      const FieldSpec& spec, const InteractionFlags& flags);

}  // namespace twocolor
