#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "wormsim/errors.hpp"
#include "wormsim/profile.hpp"
#include "wormsim/steady.hpp"

using namespace wormsim;
using testutil::rel_err;

namespace {

HydroParams reference_params() { return reference_profile().params; }

}  // namespace

TEST_CASE("steady surge speed: zero, published point, square-root scaling") {
  HydroParams p;
  p.X_uu = 0.6 / (0.374 * 0.374);
  CHECK(steady_surge_speed(p, 0.0) == 0.0);
  CHECK(rel_err(steady_surge_speed(p, 0.6), 0.374) < 1e-14);
  CHECK(rel_err(steady_surge_speed(p, 2.4), 0.748) < 1e-14);
  CHECK(steady_surge_speed(p, -0.6) == -steady_surge_speed(p, 0.6));

  HydroParams bad;
  CHECK_THROWS_AS(steady_surge_speed(bad, 1.0), SimError);
}

TEST_CASE("steady heave speed: quadratic, linear and mixed damping") {
  HydroParams p;
  SUBCASE("quadratic only") {
    p.Z_wabsw = 2.0 / (0.234 * 0.234);
    CHECK(steady_heave_speed(p, 0.0) == 0.0);
    CHECK(rel_err(steady_heave_speed(p, 2.0), 0.234) < 1e-14);
    CHECK(steady_heave_speed(p, -2.0) == -steady_heave_speed(p, 2.0));
  }
  SUBCASE("linear rebalance hits the same fixed point") {
    p.Z_w = (2.0 / (0.234 * 0.234)) * 0.234;  // 36.526... * 0.234
    CHECK(rel_err(steady_heave_speed(p, 2.0), 0.234) < 1e-14);
  }
  SUBCASE("mixed coefficients solve the full quadratic") {
    p.Z_w = 3.0;
    p.Z_wabsw = 10.0;
    const double w = steady_heave_speed(p, 5.0);
    CHECK(rel_err(p.Z_w * w + p.Z_wabsw * w * std::abs(w), 5.0) < 1e-12);
  }
  SUBCASE("no damping at all is an error") {
    CHECK_THROWS_AS(steady_heave_speed(p, 1.0), SimError);
  }
}

TEST_CASE("steady turn: published operating point") {
  const HydroParams p = reference_params();
  const SteadyTurn turn = steady_turn(p, {10.0, -5.0, 0.0, 0.0, true});
  CHECK(rel_err(turn.r_ss, 1.24524) < 1e-5);
  CHECK(rel_err(turn.u_ss, 1.079) < 1e-10);
  CHECK(rel_err(turn.diameter, 1.733) < 1e-10);
  CHECK(turn.sense == TurnSense::right);
  CHECK(turn.tangential_speed == turn.u_ss);
  // diameter identity
  CHECK(rel_err(turn.diameter * std::abs(turn.r_ss),
                2.0 * std::abs(turn.u_ss)) < 1e-12);
}

TEST_CASE("steady turn: degenerate commands") {
  const HydroParams p = reference_params();
  SUBCASE("opposed thrust spins in place") {
    const SteadyTurn t = steady_turn(p, {6.0, -6.0, 0.0, 0.0, true});
    CHECK(t.u_ss == 0.0);
    CHECK(t.r_ss > 0.0);
    CHECK(t.diameter == 0.0);
    CHECK(t.sense == TurnSense::in_place);
  }
  SUBCASE("equal thrust runs straight") {
    const SteadyTurn t = steady_turn(p, {3.0, 3.0, 0.0, 0.0, true});
    CHECK(t.r_ss == 0.0);
    CHECK(std::isinf(t.diameter));
    CHECK(t.sense == TurnSense::straight);
    CHECK(rel_err(t.tangential_speed, steady_surge_speed(p, 6.0)) < 1e-14);
  }
  SUBCASE("all zero is a straight rest state") {
    const SteadyTurn t = steady_turn(p, {0.0, 0.0, 0.0, 0.0, true});
    CHECK(t.u_ss == 0.0);
    CHECK(t.r_ss == 0.0);
    CHECK(t.sense == TurnSense::straight);
  }
  SUBCASE("left turns have negative yaw rate") {
    const SteadyTurn t = steady_turn(p, {-5.0, 10.0, 0.0, 0.0, true});
    CHECK(t.r_ss < 0.0);
    CHECK(t.sense == TurnSense::left);
  }
  SUBCASE("yaw drag can exceed a tiny forward thrust") {
    HydroParams heavy_drag = p;
    heavy_drag.X_rr = 50.0;
    CHECK_THROWS_AS(steady_turn(heavy_drag, {5.0, -4.99, 0.0, 0.0, true}),
                    SimError);
  }
}

TEST_CASE("calibrate: published targets round-trip through every solver") {
  const CalibrationResult cal = calibrate(CalibrationTargets{});
  const HydroParams& c = cal.coefficients;

  // closed-form oracle arithmetic, evaluated independently
  CHECK(rel_err(c.X_uu, 0.6 / (0.374 * 0.374)) < 1e-14);
  CHECK(rel_err(c.Z_wabsw, 2.0 / (0.234 * 0.234)) < 1e-14);
  const double r_ss = 2.0 * 1.079 / 1.733;
  const double N_T = 10.0 * 0.0725 + 5.0 * 0.0725;
  CHECK(rel_err(c.N_rabsr, N_T / (r_ss * r_ss)) < 1e-14);
  CHECK(rel_err(c.X_rr, (5.0 - c.X_uu * 1.079 * 1.079) / (r_ss * r_ss)) <
        1e-12);

  // spec-printed approximations
  CHECK(c.X_uu == doctest::Approx(4.2895).epsilon(1e-3));
  CHECK(c.Z_wabsw == doctest::Approx(36.526).epsilon(1e-4));
  CHECK(c.N_rabsr == doctest::Approx(0.70133).epsilon(1e-4));
  CHECK(c.X_rr == doctest::Approx(0.00385).epsilon(2e-2));

  // round trip at 1e-10
  CHECK(cal.residuals.surge_rel < 1e-10);
  CHECK(cal.residuals.heave_rel < 1e-10);
  CHECK(cal.residuals.turn_speed_rel < 1e-10);
  CHECK(cal.residuals.turn_diameter_rel < 1e-10);
}

TEST_CASE("calibrate: linear-only split hits the same fixed points") {
  CalibrationOptions opt;
  opt.split = DampingSplit::linear_only;
  const CalibrationResult cal = calibrate(CalibrationTargets{}, opt);
  CHECK(cal.coefficients.Z_wabsw == 0.0);
  CHECK(rel_err(cal.coefficients.Z_w, 2.0 / 0.234) < 1e-14);
  CHECK(cal.coefficients.Z_w == doctest::Approx(8.547).epsilon(1e-4));
  CHECK(cal.residuals.heave_rel < 1e-10);
  CHECK(cal.residuals.turn_speed_rel < 1e-10);
}

TEST_CASE("calibrate: fixed-ratio split keeps the round trip") {
  CalibrationOptions opt;
  opt.split = DampingSplit::fixed_ratio;
  opt.quadratic_fraction = 0.37;
  const CalibrationResult cal = calibrate(CalibrationTargets{}, opt);
  CHECK(cal.residuals.surge_rel < 1e-10);
  CHECK(cal.residuals.heave_rel < 1e-10);
  CHECK(cal.residuals.turn_speed_rel < 1e-10);
  CHECK(cal.residuals.turn_diameter_rel < 1e-10);
}

TEST_CASE("calibrate: degenerate straight-line turn target is flagged") {
  CalibrationTargets t;
  t.turn_F_L = 5.0;
  t.turn_F_R = 5.0;  // no torque: infinite diameter
  const CalibrationResult cal = calibrate(t);
  CHECK(cal.coefficients.X_rr == 0.0);
  CHECK(cal.coefficients.N_rabsr == 0.0);
  bool flagged = false;
  for (const auto& note : cal.notes)
    if (note.find("unconstrained") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("calibrate: inconsistent targets are rejected") {
  CalibrationTargets t;
  // a fast tight turn that the surge drag cannot permit
  t.turn_speed_mps = 3.0;
  t.turn_diameter_m = 0.1;
  CHECK_THROWS_AS(calibrate(t), SimError);
  CalibrationTargets bad;
  bad.surge_speed_mps = 0.0;
  CHECK_THROWS_AS(calibrate(bad), SimError);
}

TEST_CASE("thrust/velocity sweep: published rows and ordering") {
  const HydroParams p = reference_params();
  const auto rows = sweep_thrust_velocity(p, 0.0, 2.0, 11);
  REQUIRE(rows.size() == 11);
  CHECK(rows.front().force == 0.0);
  CHECK(*rows.front().surge_speed == 0.0);
  CHECK(*rows.front().heave_speed == 0.0);

  // F = 0.6 and F = 2 rows
  CHECK(rows[3].force == doctest::Approx(0.6));
  CHECK(rel_err(*rows[3].surge_speed, 0.374) < 1e-12);
  CHECK(*rows[3].heave_speed == doctest::Approx(0.128).epsilon(2e-3));
  CHECK(rows[10].force == doctest::Approx(2.0));
  CHECK(rel_err(*rows[10].heave_speed, 0.234) < 1e-12);

  // surge always beats heave at equal positive force, and both grow
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(*rows[i].surge_speed > *rows[i].heave_speed);
    CHECK(*rows[i].surge_speed > *rows[i - 1].surge_speed);
    CHECK(*rows[i].heave_speed > *rows[i - 1].heave_speed);
  }
}

TEST_CASE("turn map: diagonals carry the degenerate regions") {
  const HydroParams p = reference_params();
  const SweepGrid grid = sweep_turn_map(p, -10.0, 10.0, -10.0, 10.0, 21);
  const std::size_t n = grid.f_left.size();
  REQUIRE(n == 21);
  for (std::size_t i = 0; i < n; ++i) {
    // F_L = -F_R: in-place spin, zero speed
    const std::size_t anti = grid.index(i, n - 1 - i);
    CHECK(grid.kind[anti] == CellKind::infinitesimal_region);
    CHECK(grid.speed[anti] == 0.0);
    // F_L = F_R: straight line, infinite diameter. The origin sits on both
    // diagonals and the zero-net-thrust rule takes precedence there.
    const std::size_t diag = grid.index(i, i);
    if (i == n - 1 - i)
      CHECK(grid.kind[diag] == CellKind::infinitesimal_region);
    else
      CHECK(grid.kind[diag] == CellKind::infinite_region);
  }
  // published cell (10, -5)
  const std::size_t idx = grid.index(n - 1, 5);
  CHECK(grid.f_left[n - 1] == 10.0);
  CHECK(grid.f_right[5] == -5.0);
  CHECK(rel_err(grid.speed[idx], 1.079) < 1e-10);
  CHECK(grid.log_diameter[idx] ==
        doctest::Approx(std::log10(1.733)).epsilon(1e-10));
  CHECK(grid.log_diameter[idx] == doctest::Approx(0.2388).epsilon(1e-3));
}

TEST_CASE("turn map: thrust swap mirrors speed and flips the sense") {
  const HydroParams p = reference_params();
  const SweepGrid grid = sweep_turn_map(p, -10.0, 10.0, -10.0, 10.0, 21);
  const std::size_t n = grid.f_left.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t a = grid.index(i, j);
      const std::size_t b = grid.index(j, i);
      CHECK(grid.kind[a] == grid.kind[b]);
      CHECK(grid.speed[a] == doctest::Approx(grid.speed[b]).epsilon(1e-12));
      if (grid.sense[a] == TurnSense::left)
        CHECK(grid.sense[b] == TurnSense::right);
      if (grid.sense[a] == TurnSense::right)
        CHECK(grid.sense[b] == TurnSense::left);
    }
  }
}

TEST_CASE("circle fit: exact, synthetic, and degenerate inputs") {
  SUBCASE("three cardinal points") {
    const double xs[] = {1.0, 0.0, -1.0};
    const double ys[] = {0.0, 1.0, 0.0};
    const CircleFit fit = fit_circle(xs, ys);
    CHECK(std::abs(fit.center_x) < 1e-14);
    CHECK(std::abs(fit.center_y) < 1e-14);
    CHECK(rel_err(fit.radius, 1.0) < 1e-14);
    CHECK(fit.rms_residual < 1e-14);
  }
  SUBCASE("hundred noiseless points recover the circle") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 100; ++i) {
      const double t = 2.0 * std::numbers::pi * i / 100.0;
      xs.push_back(2.0 + 0.8665 * std::cos(t));
      ys.push_back(3.0 + 0.8665 * std::sin(t));
    }
    const CircleFit fit = fit_circle(xs, ys);
    CHECK(rel_err(fit.center_x, 2.0) < 1e-10);
    CHECK(rel_err(fit.center_y, 3.0) < 1e-10);
    CHECK(rel_err(fit.radius, 0.8665) < 1e-10);
  }
  SUBCASE("collinear points have no circle") {
    const double xs[] = {0.0, 1.0, 2.0};
    const double ys[] = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(fit_circle(xs, ys), SimError);
  }
  SUBCASE("fewer than three points are rejected") {
    const double xs[] = {0.0, 1.0};
    const double ys[] = {0.0, 1.0};
    CHECK_THROWS_AS(fit_circle(xs, ys), SimError);
  }
}

TEST_CASE("steady speeds increase monotonically with thrust") {
  const HydroParams p = reference_params();
  testutil::Rng rng;
  for (int i = 0; i < 500; ++i) {
    const double f1 = rng.uniform(0.01, 30.0);
    const double f2 = f1 + rng.uniform(0.01, 5.0);
    CHECK(steady_surge_speed(p, f2) > steady_surge_speed(p, f1));
    CHECK(steady_heave_speed(p, f2) > steady_heave_speed(p, f1));
  }
}
