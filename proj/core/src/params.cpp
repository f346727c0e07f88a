#include "twocolor/params.hpp"

#include <cmath>
#include <string>

#include "twocolor/error.hpp"

namespace twocolor {

MoleculeParams ocs() {
  return MoleculeParams{.B = 0.20286,
                        .mu = 0.71,
                        .dalpha = 27.26,
                        .alpha_perp = 26.08,
                        .dbeta = 132.3,
                        .beta_perp = -59.1};
}

void validate(const MoleculeParams& p) {
  for (double v : {p.B, p.mu, p.dalpha, p.alpha_perp, p.dbeta, p.beta_perp}) {
    if (!std::isfinite(v)) {
      throw InvalidParameter("molecule parameters must be finite");
    }
  }
  if (p.B <= 0.0) {
    throw InvalidParameter("rotational constant must be positive, got " +
                           std::to_string(p.B));
  }
}

InternalParams to_internal(const MoleculeParams& p) {
  validate(p);
  InternalParams out;
  out.B = p.B * units::kWavenumberToHartree;
  out.mu = p.mu * units::kDebyeToAu;
  out.dalpha = p.dalpha;
  out.alpha_perp = p.alpha_perp;
  out.dbeta = p.dbeta;
  out.beta_perp = p.beta_perp;
  out.rotational_period = units::ps_to_au(rotational_period_ps(p.B));
  return out;
}

MoleculeParams from_internal(const InternalParams& p) {
  return MoleculeParams{.B = p.B / units::kWavenumberToHartree,
                        .mu = p.mu / units::kDebyeToAu,
                        .dalpha = p.dalpha,
                        .alpha_perp = p.alpha_perp,
                        .dbeta = p.dbeta,
                        .beta_perp = p.beta_perp};
}

double rotational_period_ps(double B_wavenumber) {
  if (!(B_wavenumber > 0.0)) {
    throw InvalidParameter("rotational constant must be positive");
  }
  return 1.0e12 / (2.0 * B_wavenumber * units::kSpeedOfLightCmPerS);
}

FieldStrength intensity_to_field(double intensity_w_per_cm2) {
  if (!(intensity_w_per_cm2 >= 0.0) || !std::isfinite(intensity_w_per_cm2)) {
    throw InvalidParameter("laser intensity must be nonnegative");
  }
  const double intensity_si = intensity_w_per_cm2 * 1.0e4;  // W/m^2
  const double e_si = std::sqrt(2.0 * intensity_si /
                                (units::kSpeedOfLightMPerS * units::kVacuumPermittivity));
  FieldStrength out;
  out.v_per_cm = e_si * 1.0e-2;
  out.atomic = out.v_per_cm / units::kAuFieldVPerCm;
  return out;
}

}  // namespace twocolor
