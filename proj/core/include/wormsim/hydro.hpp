#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wormsim {

/// Prolate-spheroid stand-in for the hull: semi-axis a along the body x-axis
/// (half the vehicle length), semi-axis b transverse (half the diameter),
/// immersed in fluid of density rho.
struct SpheroidGeometry {
  double semi_major_a = 0.0;       // m
  double semi_minor_b = 0.0;       // m
  double fluid_density_rho = 1000.0;  // kg/m^3
};

/// Diagonal added-mass set for a body of revolution, plus the potential-flow
/// shape factors it was derived from. lambda44 is zero for a spheroid
/// spinning about its own axis of revolution.
struct SpheroidAddedMass {
  double lambda11 = 0.0;  // kg, axial
  double lambda22 = 0.0;  // kg, transverse
  double lambda33 = 0.0;  // kg, transverse
  double lambda44 = 0.0;  // kg m^2, always 0
  double lambda55 = 0.0;  // kg m^2
  double lambda66 = 0.0;  // kg m^2
  double k1 = 0.0;        // axial accession-to-inertia factor
  double k2 = 0.0;        // transverse factor
  double k_prime = 0.0;   // rotational factor
  double displaced_fluid_mass = 0.0;  // kg
};

/// Full physical parameter set for the reduced rigid-body models.
///
/// Damping coefficients multiply fixed velocity monomials (documented per
/// field). Quadratic same-axis drag uses the sign-symmetric form s|s| so that
/// backward / ascending motion dissipates too; cross terms that must be even
/// in the generating rate (X_vv, X_rr, M_ww) keep their even form, which is
/// what makes mirrored maneuvers mirror exactly.
struct HydroParams {
  double mass = 0.0;                    // kg
  double Jx = 0.0, Jy = 0.0, Jz = 0.0;  // kg m^2

  // added mass: translational kg, rotational kg m^2
  double lambda11 = 0.0, lambda22 = 0.0, lambda33 = 0.0;
  double lambda44 = 0.0, lambda55 = 0.0, lambda66 = 0.0;

  // surge force: X_uu u|u|, X_vv v^2, X_rr r^2, X_vr v r
  double X_uu = 0.0, X_vv = 0.0, X_rr = 0.0, X_vr = 0.0;

  // sway force: Y_v v, Y_r r, Y_vabsv v|v|, Y_rabsr r|r|, Y_vabsr v|r|
  double Y_v = 0.0, Y_r = 0.0, Y_vabsv = 0.0, Y_rabsr = 0.0, Y_vabsr = 0.0;

  // yaw moment: same monomials as sway
  double N_v = 0.0, N_r = 0.0, N_vabsv = 0.0, N_rabsr = 0.0, N_vabsr = 0.0;

  // heave force: Z_w w, Z_absw |w|, Z_q q, Z_wabsw w|w|, Z_ww w|w|,
  // Z_wabsq w|q|, Z_qabsq q|q|  (Z_ww is the drag that a symmetric model
  // folds into Z_wabsw; both are carried because parameter sources list them
  // separately)
  double Z_w = 0.0, Z_absw = 0.0, Z_q = 0.0, Z_wabsw = 0.0, Z_ww = 0.0,
         Z_wabsq = 0.0, Z_qabsq = 0.0;

  // pitch moment: M_w w, M_absw |w|, M_q q, M_wabsw w|w|, M_ww w^2,
  // M_wabsq w|q|, M_qabsq q|q|
  double M_w = 0.0, M_absw = 0.0, M_q = 0.0, M_wabsw = 0.0, M_ww = 0.0,
         M_wabsq = 0.0, M_qabsq = 0.0;

  // propeller moment arms from the mass centre, m
  double L_L = 0.0, L_R = 0.0, L_F = 0.0, L_B = 0.0;

  /// Invariant violations, empty when the set is usable for dynamics:
  /// mass and inertias positive, added mass / arms / damping nonnegative.
  std::vector<std::string> violations() const;

  /// Throws SimError(invalid_coefficient) listing all violations.
  void validate() const;
};

/// Stable 64-bit fingerprint of a parameter set (order-sensitive FNV-1a over
/// the field values); used to tag trajectories and the CLI --version output.
std::uint64_t fingerprint(const HydroParams& params);

/// Commanded propeller forces. The lateral pair can only thrust when the
/// propellers are swung out.
struct ThrustCommand {
  double F_L = 0.0;  // N, left
  double F_R = 0.0;  // N, right
  double F_F = 0.0;  // N, front (vertical pair)
  double F_B = 0.0;  // N, back
  bool propellers_expanded = false;

  std::vector<std::string> violations() const;
  void validate() const;
};

/// Net force/moment of the four propellers about the body axes.
struct ThrustResultants {
  double X_T = 0.0;  // N
  double Z_T = 0.0;  // N
  double M_T = 0.0;  // N m
  double N_T = 0.0;  // N m
};

// -- planar state reductions -------------------------------------------------

/// Horizontal plane: global position (xi, eta), heading alpha (angle from the
/// xi-axis to the body x-axis, stored unwrapped), body surge u, sway v, yaw
/// rate r.
struct HorizontalState {
  double xi = 0.0, eta = 0.0, alpha = 0.0;
  double u = 0.0, v = 0.0, r = 0.0;
};

/// Horizontal circular-maneuver reduction: sway dropped.
struct ReducedTurnState {
  double xi = 0.0, eta = 0.0, alpha = 0.0;
  double u = 0.0, r = 0.0;
};

/// Vertical plane: zeta positive down, pitch theta positive bow-up (stored
/// unwrapped), body surge u, heave w, pitch rate q.
struct VerticalState {
  double xi = 0.0, zeta = 0.0, theta = 0.0;
  double u = 0.0, w = 0.0, q = 0.0;
};

/// Straight-line surge along the global xi-axis.
struct SurgeState {
  double xi = 0.0;
  double V_xi = 0.0;
};

/// Straight-line heave along the global zeta-axis (positive down).
struct HeaveState {
  double zeta = 0.0;
  double V_zeta = 0.0;
};

// -- operations ---------------------------------------------------------------

/// Potential-flow added mass of a prolate spheroid (a >= b). The degenerate
/// sphere a == b is returned from the analytic limit k1 = k2 = 1/2, k' = 0.
/// Throws SimError(invalid_geometry) for non-positive axes/density or a < b.
SpheroidAddedMass spheroid_added_mass(const SpheroidGeometry& geom);

/// Merge spheroid-derived lambdas into a parameter set.
void apply_added_mass(HydroParams& params, const SpheroidAddedMass& am);

/// X_T = F_L + F_R, Z_T = F_F + F_B, N_T = F_L L_L - F_R L_R,
/// M_T = -F_F L_F + F_B L_B. Pure identities, no error paths.
ThrustResultants thrust_resultants(const ThrustCommand& cmd,
                                   const HydroParams& params);

/// Body-frame accelerations and global kinematics on the horizontal plane
/// (p = q = w = 0).
HorizontalState horizontal_derivatives(const HorizontalState& state,
                                       const HydroParams& params,
                                       const ThrustCommand& cmd);

/// Circular-maneuver reduction of the horizontal dynamics. This is the
/// nonsingular body-frame form; the sec/csc global form is equivalent along
/// trajectories and is kept as a test invariant only.
ReducedTurnState reduced_turn_derivatives(const ReducedTurnState& state,
                                          const HydroParams& params,
                                          const ThrustCommand& cmd);

/// d(V_xi)/dt for straight surge: (-X_uu V|V| + F_L + F_R) / (m + lambda11).
double surge_derivative(double V_xi, const HydroParams& params,
                        const ThrustCommand& cmd);

/// Body-frame accelerations and global kinematics on the vertical plane
/// (v = p = r = 0).
VerticalState vertical_derivatives(const VerticalState& state,
                                   const HydroParams& params,
                                   const ThrustCommand& cmd);

/// d(V_zeta)/dt for straight heave:
/// (-Z_w V - Z_wabsw V|V| + F_F + F_B) / (m + lambda33).
double heave_derivative(double V_zeta, const HydroParams& params,
                        const ThrustCommand& cmd);

// -- integrator adapters -------------------------------------------------------
//
// Each model packs its state into a flat vector (label order below) and is
// callable with the integrator's (t, y, dydt) signature. All are pure.

struct SurgeModel {
  HydroParams params;
  ThrustCommand cmd;
  static constexpr std::size_t state_size = 2;
  static std::vector<std::string> labels();
  void operator()(double t, std::span<const double> y,
                  std::span<double> dydt) const;
};

struct HeaveModel {
  HydroParams params;
  ThrustCommand cmd;
  static constexpr std::size_t state_size = 2;
  static std::vector<std::string> labels();
  void operator()(double t, std::span<const double> y,
                  std::span<double> dydt) const;
};

struct ReducedTurnModel {
  HydroParams params;
  ThrustCommand cmd;
  static constexpr std::size_t state_size = 5;
  static std::vector<std::string> labels();
  static std::vector<double> pack(const ReducedTurnState& s);
  static ReducedTurnState unpack(std::span<const double> y);
  void operator()(double t, std::span<const double> y,
                  std::span<double> dydt) const;
};

struct HorizontalModel {
  HydroParams params;
  ThrustCommand cmd;
  static constexpr std::size_t state_size = 6;
  static std::vector<std::string> labels();
  static std::vector<double> pack(const HorizontalState& s);
  static HorizontalState unpack(std::span<const double> y);
  void operator()(double t, std::span<const double> y,
                  std::span<double> dydt) const;
};

struct VerticalModel {
  HydroParams params;
  ThrustCommand cmd;
  static constexpr std::size_t state_size = 6;
  static std::vector<std::string> labels();
  static std::vector<double> pack(const VerticalState& s);
  static VerticalState unpack(std::span<const double> y);
  void operator()(double t, std::span<const double> y,
                  std::span<double> dydt) const;
};

}  // namespace wormsim
