#include "wormsim/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wormsim/errors.hpp"

namespace wormsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Unique sign-matched root of c_lin s + c_quad s|s| = rhs with c_lin,
/// c_quad >= 0, not both zero. Closed-form quadratic in |s|.
double solve_lin_quad(double c_lin, double c_quad, double rhs,
                      const char* what) {
  if (!(c_lin >= 0.0) || !(c_quad >= 0.0) || (c_lin == 0.0 && c_quad == 0.0))
    throw SimError(ErrorCode::invalid_coefficient,
                   std::string(what) +
                       " requires nonnegative damping with at least one "
                       "positive coefficient");
  if (rhs == 0.0) return 0.0;
  const double mag = std::abs(rhs);
  double s;
  if (c_quad == 0.0) {
    s = mag / c_lin;
  } else {
    // c_quad s^2 + c_lin s - mag = 0, s >= 0
    s = (-c_lin + std::sqrt(c_lin * c_lin + 4.0 * c_quad * mag)) /
        (2.0 * c_quad);
  }
  return sgn(rhs) * s;
}

}  // namespace

const char* to_string(TurnSense sense) {
  switch (sense) {
    case TurnSense::left: return "left";
    case TurnSense::right: return "right";
    case TurnSense::straight: return "straight";
    case TurnSense::in_place: return "in-place";
  }
  return "unknown";
}

std::vector<std::string> CalibrationTargets::violations() const {
  std::vector<std::string> out;
  if (!(surge_speed_mps > 0.0)) out.push_back("surge_speed_mps must be > 0");
  if (!(heave_speed_mps > 0.0)) out.push_back("heave_speed_mps must be > 0");
  if (!(turn_speed_mps > 0.0)) out.push_back("turn_speed_mps must be > 0");
  if (!(turn_diameter_m > 0.0)) out.push_back("turn_diameter_m must be > 0");
  if (surge_thrust_N == 0.0) out.push_back("surge_thrust_N must be nonzero");
  if (heave_thrust_N == 0.0) out.push_back("heave_thrust_N must be nonzero");
  if (!(arm_L_L >= 0.0) || !(arm_L_R >= 0.0))
    out.push_back("moment arms must be >= 0");
  return out;
}

double steady_surge_speed(const HydroParams& params, double total_thrust) {
  if (!(params.X_uu > 0.0))
    throw SimError(ErrorCode::invalid_coefficient,
                   "steady surge speed requires X_uu > 0");
  return sgn(total_thrust) * std::sqrt(std::abs(total_thrust) / params.X_uu);
}

double steady_heave_speed(const HydroParams& params, double total_thrust) {
  return solve_lin_quad(params.Z_w, params.Z_wabsw, total_thrust,
                        "steady heave speed");
}

SteadyTurn steady_turn(const HydroParams& params, const ThrustCommand& cmd) {
  const ThrustResultants T = thrust_resultants(cmd, params);

  SteadyTurn out;
  if (T.N_T == 0.0) {
    out.r_ss = 0.0;
  } else {
    out.r_ss = solve_lin_quad(params.N_r, params.N_rabsr, T.N_T,
                              "steady turn yaw balance");
  }

  if (T.X_T == 0.0) {
    // no net thrust: pure spin (or rest when the torque is zero too)
    out.u_ss = 0.0;
    out.tangential_speed = 0.0;
    out.diameter = (out.r_ss == 0.0) ? kInf : 0.0;
    out.sense = (out.r_ss == 0.0) ? TurnSense::straight : TurnSense::in_place;
    return out;
  }

  if (!(params.X_uu > 0.0))
    throw SimError(ErrorCode::invalid_coefficient,
                   "steady turn requires X_uu > 0");
  // Yaw-induced drag is even in r and always opposes the commanded surge
  // direction; when it exceeds the net thrust there is no translating
  // equilibrium.
  const double net = std::abs(T.X_T) - params.X_rr * out.r_ss * out.r_ss;
  if (net < 0.0)
    throw SimError(ErrorCode::no_steady_state,
                   "yaw drag exceeds net thrust; no translating steady state");
  out.u_ss = sgn(T.X_T) * std::sqrt(net / params.X_uu);
  out.tangential_speed = std::abs(out.u_ss);

  if (out.r_ss == 0.0) {
    out.diameter = kInf;
    out.sense = TurnSense::straight;
  } else {
    out.diameter = std::abs(2.0 * out.u_ss / out.r_ss);
    out.sense = out.r_ss > 0.0 ? TurnSense::right : TurnSense::left;
  }
  return out;
}

CalibrationResult calibrate(const CalibrationTargets& targets,
                            const CalibrationOptions& options) {
  {
    auto v = targets.violations();
    if (!v.empty())
      throw SimError(ErrorCode::invalid_target, v.front());
  }
  double phi = 1.0;  // share of each steady force carried by the quadratic term
  switch (options.split) {
    case DampingSplit::quadratic_only: phi = 1.0; break;
    case DampingSplit::linear_only: phi = 0.0; break;
    case DampingSplit::fixed_ratio: phi = options.quadratic_fraction; break;
  }
  if (!(phi >= 0.0 && phi <= 1.0))
    throw SimError(ErrorCode::invalid_target,
                   "quadratic_fraction must be in [0, 1]");

  CalibrationResult out;
  HydroParams& c = out.coefficients;
  c.L_L = targets.arm_L_L;
  c.L_R = targets.arm_L_R;

  // surge: X_uu u|u| = F at u = V_surge (single coefficient, no split)
  c.X_uu = targets.surge_thrust_N /
           (targets.surge_speed_mps * targets.surge_speed_mps);

  // heave: Z_w w + Z_wabsw w|w| = F at w = V_heave
  c.Z_wabsw = phi * targets.heave_thrust_N /
              (targets.heave_speed_mps * targets.heave_speed_mps);
  c.Z_w = (1.0 - phi) * targets.heave_thrust_N / targets.heave_speed_mps;

  // turn: r_ss from the diameter identity, then yaw and surge balances
  const ThrustCommand turn_cmd{targets.turn_F_L, targets.turn_F_R, 0.0, 0.0,
                               true};
  const ThrustResultants T = thrust_resultants(turn_cmd, c);
  const double r_ss = 2.0 * targets.turn_speed_mps / targets.turn_diameter_m;
  if (std::abs(T.N_T) < 1e-12 || r_ss == 0.0) {
    out.notes.push_back(
        "turn target is degenerate (no net torque): X_rr and the yaw damping "
        "are unconstrained and left at zero");
  } else {
    c.N_rabsr = phi * T.N_T / (r_ss * r_ss);
    c.N_r = (1.0 - phi) * T.N_T / r_ss;
    double X_rr = (T.X_T - c.X_uu * targets.turn_speed_mps *
                               targets.turn_speed_mps) /
                  (r_ss * r_ss);
    if (X_rr < -1e-6)
      throw SimError(ErrorCode::inconsistent_targets,
                     "turn target implies negative X_rr = " +
                         std::to_string(X_rr));
    if (X_rr < 0.0) {
      out.notes.push_back("X_rr clamped to zero (computed " +
                          std::to_string(X_rr) + ")");
      X_rr = 0.0;
    }
    c.X_rr = X_rr;
  }

  out.notes.push_back(
      "arms L_L = L_R = " + std::to_string(targets.arm_L_L) +
      " m assumed (half the lateral propeller axis span); L_F, L_B are not "
      "constrained by any target");

  // forward substitution: every target must be recovered
  const double surge_back = steady_surge_speed(c, targets.surge_thrust_N);
  const double heave_back = steady_heave_speed(c, targets.heave_thrust_N);
  out.residuals.surge_rel =
      std::abs(surge_back - targets.surge_speed_mps) / targets.surge_speed_mps;
  out.residuals.heave_rel =
      std::abs(heave_back - targets.heave_speed_mps) / targets.heave_speed_mps;
  if (c.N_rabsr > 0.0 || c.N_r > 0.0) {
    const SteadyTurn turn_back = steady_turn(c, turn_cmd);
    out.residuals.turn_speed_rel =
        std::abs(turn_back.tangential_speed - targets.turn_speed_mps) /
        targets.turn_speed_mps;
    out.residuals.turn_diameter_rel =
        std::abs(turn_back.diameter - targets.turn_diameter_m) /
        targets.turn_diameter_m;
  }
  return out;
}

std::vector<ThrustVelocityRow> sweep_thrust_velocity(const HydroParams& params,
                                                     double force_min,
                                                     double force_max,
                                                     int n_points) {
  if (n_points < 2)
    throw SimError(ErrorCode::invalid_target,
                   "thrust sweep needs at least 2 points");
  std::vector<ThrustVelocityRow> rows;
  rows.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    ThrustVelocityRow row;
    row.force = force_min + (force_max - force_min) * static_cast<double>(i) /
                                static_cast<double>(n_points - 1);
    try {
      row.surge_speed = steady_surge_speed(params, row.force);
    } catch (const SimError&) {
    }
    try {
      row.heave_speed = steady_heave_speed(params, row.force);
    } catch (const SimError&) {
    }
    rows.push_back(row);
  }
  return rows;
}

SweepGrid sweep_turn_map(const HydroParams& params, double f_left_min,
                         double f_left_max, double f_right_min,
                         double f_right_max, int grid_n, double eps_force,
                         double eps_torque) {
  if (grid_n < 2)
    throw SimError(ErrorCode::invalid_target,
                   "turn map needs at least a 2x2 grid");

  SweepGrid grid;
  const auto n = static_cast<std::size_t>(grid_n);
  grid.f_left.resize(n);
  grid.f_right.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    grid.f_left[i] = f_left_min + (f_left_max - f_left_min) * t;
    grid.f_right[i] = f_right_min + (f_right_max - f_right_min) * t;
  }
  grid.kind.resize(n * n, CellKind::finite);
  grid.speed.resize(n * n, 0.0);
  grid.log_diameter.resize(n * n, kNaN);
  grid.sense.resize(n * n, TurnSense::straight);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = grid.index(i, j);
      ThrustCommand cmd;
      cmd.F_L = grid.f_left[i];
      cmd.F_R = grid.f_right[j];
      cmd.propellers_expanded = true;
      const ThrustResultants T = thrust_resultants(cmd, params);

      if (std::abs(T.X_T) < eps_force) {
        grid.kind[idx] = CellKind::infinitesimal_region;
        grid.speed[idx] = 0.0;
        grid.sense[idx] =
            T.N_T > 0.0
                ? TurnSense::right
                : (T.N_T < 0.0 ? TurnSense::left : TurnSense::straight);
        continue;
      }
      if (std::abs(T.N_T) < eps_torque) {
        grid.kind[idx] = CellKind::infinite_region;
        grid.speed[idx] = std::abs(steady_surge_speed(params, T.X_T));
        grid.sense[idx] = TurnSense::straight;
        continue;
      }
      try {
        const SteadyTurn turn = steady_turn(params, cmd);
        grid.speed[idx] = turn.tangential_speed;
        grid.log_diameter[idx] = std::log10(turn.diameter);
        grid.sense[idx] = turn.sense;
      } catch (const SimError& e) {
        if (e.code() != ErrorCode::no_steady_state) throw;
        // yaw drag swamps the thrust: continuous extension of the spin region
        grid.kind[idx] = CellKind::infinitesimal_region;
        grid.speed[idx] = 0.0;
        grid.sense[idx] = T.N_T > 0.0 ? TurnSense::right : TurnSense::left;
      }
    }
  }
  return grid;
}

CircleFit fit_circle(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3)
    throw SimError(ErrorCode::no_circle,
                   "circle fit needs >= 3 paired points");

  // Kasa fit on centroid-shifted data: minimize sum (x^2+y^2 + D x + E y + F)^2,
  // linear in (D, E, F).
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double Sxx = 0, Sxy = 0, Syy = 0, Sx = 0, Sy = 0;
  double Sxz = 0, Syz = 0, Sz = 0;  // z = x^2 + y^2
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i] - mx;
    const double yi = y[i] - my;
    const double zi = xi * xi + yi * yi;
    Sxx += xi * xi;
    Sxy += xi * yi;
    Syy += yi * yi;
    Sx += xi;
    Sy += yi;
    Sxz += xi * zi;
    Syz += yi * zi;
    Sz += zi;
  }

  // normal equations for z + D x + E y + F = 0
  const double N = static_cast<double>(n);
  double A[3][3] = {{Sxx, Sxy, Sx}, {Sxy, Syy, Sy}, {Sx, Sy, N}};
  double b[3] = {-Sxz, -Syz, -Sz};

  // Gaussian elimination with partial pivoting; a vanishing pivot means the
  // points are collinear (or coincident).
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-12 * std::max(1.0, Sxx + Syy))
      throw SimError(ErrorCode::no_circle,
                     "points are collinear or degenerate");
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = A[r][col] / A[col][col];
      for (int c2 = col; c2 < 3; ++c2) A[r][c2] -= f * A[col][c2];
      b[r] -= f * b[col];
    }
  }
  double sol[3];
  for (int r = 2; r >= 0; --r) {
    double acc = b[r];
    for (int c2 = r + 1; c2 < 3; ++c2) acc -= A[r][c2] * sol[c2];
    sol[r] = acc / A[r][r];
  }
  const double D = sol[0], E = sol[1], F = sol[2];
  const double cx = -D / 2.0, cy = -E / 2.0;
  const double r2 = cx * cx + cy * cy - F;
  if (!(r2 > 0.0))
    throw SimError(ErrorCode::no_circle, "degenerate radius");

  CircleFit fit;
  fit.radius = std::sqrt(r2);
  fit.center_x = cx + mx;
  fit.center_y = cy + my;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::hypot(x[i] - fit.center_x, y[i] - fit.center_y) -
                     fit.radius;
    ss += d * d;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

CircleFit fit_trailing_circle(const Trajectory& traj, std::size_t x_index,
                              std::size_t y_index, double trailing_fraction) {
  const std::size_t total = traj.size();
  const auto keep = std::max<std::size_t>(
      3, static_cast<std::size_t>(std::ceil(
             trailing_fraction * static_cast<double>(total))));
  if (keep > total)
    throw SimError(ErrorCode::no_circle, "trajectory too short for a fit");
  std::vector<double> xs, ys;
  xs.reserve(keep);
  ys.reserve(keep);
  for (std::size_t i = total - keep; i < total; ++i) {
    xs.push_back(traj.states[i].at(x_index));
    ys.push_back(traj.states[i].at(y_index));
  }
  return fit_circle(xs, ys);
}

}  // namespace wormsim
