#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wormsim/hydro.hpp"
#include "wormsim/integrate.hpp"

namespace wormsim {

/// Sense of a steady turn. Positive yaw rate is clockwise seen from above
/// (z-down body axes), which this toolkit calls a right turn.
enum class TurnSense { left, right, straight, in_place };

const char* to_string(TurnSense sense);

/// Equilibrium of the circular-maneuver model: constant surge and yaw rate
/// tracing a circle of diameter |2 u / r|.
struct SteadyTurn {
  double u_ss = 0.0;              // m/s
  double r_ss = 0.0;              // rad/s
  double tangential_speed = 0.0;  // m/s, |u_ss|
  double diameter = 0.0;          // m; +inf when straight, 0 in place
  TurnSense sense = TurnSense::straight;
};

/// Published steady-state operating points used to reconstruct the damping
/// coefficients (none of which are published themselves).
struct CalibrationTargets {
  double surge_thrust_N = 0.6;
  double surge_speed_mps = 0.374;
  double heave_thrust_N = 2.0;
  double heave_speed_mps = 0.234;
  double turn_F_L = 10.0;
  double turn_F_R = -5.0;
  double turn_speed_mps = 1.079;
  double turn_diameter_m = 1.733;
  // arms assumed during calibration (half the lateral propeller axis span)
  double arm_L_L = 0.0725;
  double arm_L_R = 0.0725;

  std::vector<std::string> violations() const;
};

/// How to split one steady target across a (linear, quadratic) coefficient
/// pair. quadratic_fraction is the share of the steady force carried by the
/// quadratic term; the named policies are the endpoints.
enum class DampingSplit { quadratic_only, linear_only, fixed_ratio };

struct CalibrationOptions {
  DampingSplit split = DampingSplit::quadratic_only;
  double quadratic_fraction = 1.0;  // used by fixed_ratio
};

/// Calibrated coefficient subset plus a forward-substitution residual report.
struct CalibrationResult {
  // only the calibrated fields (X_uu, X_rr, N_r/N_rabsr, Z_w/Z_wabsw, arms)
  // are set; everything else stays zero
  HydroParams coefficients;
  struct Residuals {
    double surge_rel = 0.0;
    double heave_rel = 0.0;
    double turn_speed_rel = 0.0;
    double turn_diameter_rel = 0.0;
  } residuals;
  std::vector<std::string> notes;
};

/// Equilibrium surge speed for a net thrust F: sign(F) sqrt(|F|/X_uu).
/// Requires X_uu > 0.
double steady_surge_speed(const HydroParams& params, double total_thrust);

/// Equilibrium heave speed: unique real root of Z_w w + Z_wabsw w|w| = F with
/// sign(w) = sign(F). Requires at least one positive coefficient.
double steady_heave_speed(const HydroParams& params, double total_thrust);

/// Steady turn for a lateral thrust pair: solves the yaw balance for r_ss,
/// then the surge balance for u_ss. Zero net thrust with nonzero torque is an
/// in-place spin; zero torque is a straight run (infinite diameter). Throws
/// SimError(no_steady_state) when yaw drag exceeds the available thrust.
SteadyTurn steady_turn(const HydroParams& params, const ThrustCommand& cmd);

/// Reconstruct X_uu, Z-family, N-family and X_rr from the targets.
CalibrationResult calibrate(const CalibrationTargets& targets,
                            const CalibrationOptions& options = {});

/// One row of the thrust/velocity sweep; solver failures are recorded
/// per-point rather than aborting the sweep.
struct ThrustVelocityRow {
  double force = 0.0;  // N, applied as the net thrust of either pair
  std::optional<double> surge_speed;  // m/s
  std::optional<double> heave_speed;  // m/s
};

std::vector<ThrustVelocityRow> sweep_thrust_velocity(const HydroParams& params,
                                                     double force_min,
                                                     double force_max,
                                                     int n_points);

/// Cell classification for the turn map. Exact in-place spins (zero net
/// thrust) and exact straight runs (zero net torque) are sentinels; the log
/// diameter is only defined on finite cells.
enum class CellKind { finite, infinite_region, infinitesimal_region };

struct SweepGrid {
  std::vector<double> f_left;   // N, axis values (size n_left)
  std::vector<double> f_right;  // N, axis values (size n_right)
  // row-major cell arrays, index = i_left * n_right + i_right
  std::vector<CellKind> kind;
  std::vector<double> speed;          // m/s; 0 on infinitesimal cells
  std::vector<double> log_diameter;   // log10(m); NaN on sentinel cells
  std::vector<TurnSense> sense;

  std::size_t index(std::size_t i_left, std::size_t i_right) const {
    return i_left * f_right.size() + i_right;
  }
};

/// Evaluate steady turns over an (F_L, F_R) grid. Cells whose yaw drag
/// exceeds the net thrust have no translating steady state and collapse onto
/// the infinitesimal (spin) region.
SweepGrid sweep_turn_map(const HydroParams& params, double f_left_min,
                         double f_left_max, double f_right_min,
                         double f_right_max, int grid_n,
                         double eps_force = 1e-9, double eps_torque = 1e-9);

/// Algebraic least-squares circle through >= 3 non-collinear points.
struct CircleFit {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 0.0;
  double rms_residual = 0.0;  // rms of |distance - radius|
};

CircleFit fit_circle(std::span<const double> x, std::span<const double> y);

/// Circle fit over the trailing fraction of a trajectory's (x, y) columns;
/// the convention for turn analysis is the trailing quarter after steady
/// detection succeeds.
CircleFit fit_trailing_circle(const Trajectory& traj, std::size_t x_index,
                              std::size_t y_index, double trailing_fraction);

}  // namespace wormsim
