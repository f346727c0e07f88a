#pragma once

namespace twocolor {

// Conversion constants (CODATA 2018). All internal quantities are atomic
// units with hbar = 1.
namespace units {
inline constexpr double kDebyeToAu = 0.393430307;             // 1 D in e*a0
inline constexpr double kWavenumberToHartree = 4.556335252912e-6;  // 1 cm^-1
inline constexpr double kAuTimeFs = 2.4188843265857e-2;        // 1 a.u. of time in fs
inline constexpr double kAuFieldVPerCm = 5.14220674763e9;      // 1 a.u. of field in V/cm
inline constexpr double kSpeedOfLightCmPerS = 2.99792458e10;
inline constexpr double kSpeedOfLightMPerS = 2.99792458e8;
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

inline constexpr double kPi = 3.14159265358979323846;

constexpr double fs_to_au(double fs) { return fs / kAuTimeFs; }
constexpr double ps_to_au(double ps) { return ps * 1.0e3 / kAuTimeFs; }
constexpr double au_to_fs(double au) { return au * kAuTimeFs; }
constexpr double au_to_ps(double au) { return au * kAuTimeFs * 1.0e-3; }
}  // namespace units

// Laboratory-unit molecular constants of a linear rigid rotor.
struct MoleculeParams {
  double B = 0.0;           // rotational constant, cm^-1
  double mu = 0.0;          // permanent dipole, Debye
  double dalpha = 0.0;      // polarizability anisotropy, a.u.
  double alpha_perp = 0.0;  // perpendicular polarizability, a.u.
  double dbeta = 0.0;       // hyperpolarizability anisotropy, a.u.
  double beta_perp = 0.0;   // perpendicular hyperpolarizability, a.u.

  bool operator==(const MoleculeParams&) const = default;
};

// Same constants in atomic units.
struct InternalParams {
  double B = 0.0;      // Hartree
  double mu = 0.0;     // e*a0
  double dalpha = 0.0;
  double alpha_perp = 0.0;
  double dbeta = 0.0;
  double beta_perp = 0.0;
  double rotational_period = 0.0;  // a.u. of time
};

// Carbonyl sulfide, the default molecule.
MoleculeParams ocs();

void validate(const MoleculeParams& p);

InternalParams to_internal(const MoleculeParams& p);
MoleculeParams from_internal(const InternalParams& p);

// T_rot = 1 / (2 B c), in picoseconds.
double rotational_period_ps(double B_wavenumber);

struct FieldStrength {
  double v_per_cm = 0.0;
  double atomic = 0.0;
};

// Peak field of a cw laser of intensity I (W/cm^2): E0 = sqrt(2 I / (c eps0)).
FieldStrength intensity_to_field(double intensity_w_per_cm2);

}  // namespace twocolor
