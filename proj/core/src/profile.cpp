#include "wormsim/profile.hpp"

#include "wormsim/refdata.hpp"
#include "wormsim/steady.hpp"

namespace wormsim {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::user_supplied: return "user-supplied";
    case Provenance::calibrated: return "calibrated";
    case Provenance::spheroid_derived: return "spheroid-derived";
    case Provenance::builtin_default: return "builtin-default";
  }
  return "unknown";
}

RobotProfile reference_profile() {
  RobotProfile profile;
  HydroParams& p = profile.params;

  p.mass = refdata::kMassKg;
  p.Jx = refdata::kInertiaXKgM2;
  p.Jy = refdata::kInertiaYKgM2;
  p.Jz = refdata::kInertiaZKgM2;
  for (const char* f : {"mass", "Jx", "Jy", "Jz"})
    profile.set(f, Provenance::builtin_default);

  SpheroidGeometry envelope;
  envelope.semi_major_a = refdata::kBodyLengthM / 2.0;
  envelope.semi_minor_b = refdata::kBodyDiameterM / 2.0;
  envelope.fluid_density_rho = refdata::kFreshWaterDensity;
  apply_added_mass(p, spheroid_added_mass(envelope));
  for (const char* f : {"lambda11", "lambda22", "lambda33", "lambda44",
                        "lambda55", "lambda66"})
    profile.set(f, Provenance::spheroid_derived);

  const CalibrationResult cal = calibrate(CalibrationTargets{});
  p.X_uu = cal.coefficients.X_uu;
  p.X_rr = cal.coefficients.X_rr;
  p.N_r = cal.coefficients.N_r;
  p.N_rabsr = cal.coefficients.N_rabsr;
  p.Z_w = cal.coefficients.Z_w;
  p.Z_wabsw = cal.coefficients.Z_wabsw;
  for (const char* f : {"X_uu", "X_rr", "N_r", "N_rabsr", "Z_w", "Z_wabsw"})
    profile.set(f, Provenance::calibrated);

  p.L_L = refdata::kLateralArmM;
  p.L_R = refdata::kLateralArmM;
  p.L_F = refdata::kVerticalArmDefaultM;
  p.L_B = refdata::kVerticalArmDefaultM;
  for (const char* f : {"L_L", "L_R", "L_F", "L_B"})
    profile.set(f, Provenance::builtin_default);

  return profile;
}

}  // namespace wormsim
