#include "wormsim/scenario.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "wormsim/errors.hpp"
#include "wormsim/gait.hpp"
#include "wormsim/mode.hpp"
#include "wormsim/refdata.hpp"
#include "wormsim/steady.hpp"

namespace wormsim {

using nlohmann::json;

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void check_writable(const std::filesystem::path& path, bool overwrite) {
  if (!overwrite && std::filesystem::exists(path))
    throw ConfigError(ConfigError::Kind::bad_value, path.string(),
                      "output file already exists (pass --force to replace)");
  const auto parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_text(const std::filesystem::path& path, const std::string& text,
                bool overwrite) {
  check_writable(path, overwrite);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw SimError(ErrorCode::io, "cannot open " + path.string());
  out << text;
  if (!out)
    throw SimError(ErrorCode::io, "write failed for " + path.string());
}

json provenance_json(const RobotProfile& robot) {
  json out;
  for (const auto& [field, origin] : robot.provenance)
    out[field] = to_string(origin);
  return out;
}

std::string fingerprint_hex(const HydroParams& params) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fingerprint(params));
  return buf;
}

// ---- per-scenario runners -----------------------------------------------------

struct Outputs {
  std::filesystem::path dir;
  OutputConfig names;
  bool overwrite = false;
  std::vector<std::filesystem::path> written;

  std::filesystem::path trajectory() const { return dir / names.trajectory_file; }
  std::filesystem::path table() const { return dir / names.table_file; }
  std::filesystem::path summary() const { return dir / names.summary_file; }
};

DerivativeFn model_for(const ManeuverScenario& m, const HydroParams& params) {
  switch (m.model) {
    case ManeuverModel::turn:
      return ReducedTurnModel{params, m.command};
    case ManeuverModel::horizontal:
      return HorizontalModel{params, m.command};
    case ManeuverModel::vertical:
      return VerticalModel{params, m.command};
    case ManeuverModel::surge:
      return SurgeModel{params, m.command};
    case ManeuverModel::heave:
      return HeaveModel{params, m.command};
  }
  throw SimError(ErrorCode::internal, "unknown maneuver model");
}

std::vector<std::string> labels_for(const ManeuverScenario& m) {
  switch (m.model) {
    case ManeuverModel::turn: return ReducedTurnModel::labels();
    case ManeuverModel::horizontal: return HorizontalModel::labels();
    case ManeuverModel::vertical: return VerticalModel::labels();
    case ManeuverModel::surge: return SurgeModel::labels();
    case ManeuverModel::heave: return HeaveModel::labels();
  }
  return {};
}

std::size_t state_size_for(ManeuverModel model) {
  switch (model) {
    case ManeuverModel::turn: return ReducedTurnModel::state_size;
    case ManeuverModel::horizontal: return HorizontalModel::state_size;
    case ManeuverModel::vertical: return VerticalModel::state_size;
    case ManeuverModel::surge: return SurgeModel::state_size;
    case ManeuverModel::heave: return HeaveModel::state_size;
  }
  return 0;
}

std::size_t label_index(const std::vector<std::string>& labels,
                        const std::string& name) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return i;
  throw SimError(ErrorCode::internal, "missing state label " + name);
}

json run_maneuver(const ScenarioConfig& cfg, const ManeuverScenario& m,
                  Outputs& out) {
  const std::size_t n = state_size_for(m.model);
  std::vector<double> y0(n, 0.0);
  if (!m.initial_state.empty()) {
    if (m.initial_state.size() != n)
      throw SimError(ErrorCode::invalid_target,
                     "initial_state size does not match the model");
    y0 = m.initial_state;
  }

  Trajectory traj = integrate(model_for(m, cfg.robot.params), y0, 0.0,
                              m.duration, cfg.integrator);
  traj.labels = labels_for(m);
  traj.command_note = std::string("maneuver:") + to_string(m.model);
  traj.params_fingerprint = fingerprint(cfg.robot.params);
  write_trajectory(traj, out.trajectory(), out.overwrite);
  out.written.push_back(out.trajectory());

  json results;
  const double steady_window = std::min(5.0, m.duration / 4.0);
  constexpr double steady_tol = 1e-3;

  auto steady_of = [&](const std::string& label) -> std::optional<double> {
    return detect_steady(traj, label_index(traj.labels, label), steady_window,
                         steady_tol);
  };

  json ref;
  switch (m.model) {
    case ManeuverModel::surge: {
      const auto v = steady_of("Vxi_mps");
      results["converged"] = v.has_value();
      if (v) results["steady_speed_mps"] = *v;
      ref["paper_ode45_mps"] = refdata::kSurgeSpeedModelMps;
      ref["paper_cfd_mps"] = refdata::kSurgeSpeedCfdMps;
      ref["label"] = "reference-only";
      break;
    }
    case ManeuverModel::heave: {
      const auto v = steady_of("Vzeta_mps");
      results["converged"] = v.has_value();
      if (v) results["steady_speed_mps"] = *v;
      ref["paper_ode45_mps"] = refdata::kHeaveSpeedModelMps;
      ref["paper_cfd_mps"] = refdata::kHeaveSpeedCfdMps;
      ref["label"] = "reference-only";
      break;
    }
    case ManeuverModel::turn: {
      const auto u = steady_of("u_mps");
      const auto r = steady_of("r_radps");
      results["converged"] = u.has_value() && r.has_value();
      if (u) results["steady_speed_mps"] = *u;
      if (r) {
        results["steady_yaw_rate_radps"] = *r;
        results["steady_yaw_rate_degps"] = *r * kRadToDeg;
      }
      if (u && r) {
        const CircleFit fit = fit_trailing_circle(
            traj, label_index(traj.labels, "xi_m"),
            label_index(traj.labels, "eta_m"), 0.25);
        results["fitted_circle"] = {{"center_xi_m", fit.center_x},
                                    {"center_eta_m", fit.center_y},
                                    {"radius_m", fit.radius},
                                    {"diameter_m", 2.0 * fit.radius},
                                    {"rms_residual_m", fit.rms_residual}};
      }
      ref["paper_ode45_diameter_m"] = refdata::kTurnDiameterModelM;
      ref["paper_cfd_diameter_m"] = refdata::kTurnDiameterCfdM;
      ref["paper_ode45_speed_mps"] = refdata::kTurnSpeedModelMps;
      ref["paper_cfd_speed_mps"] = refdata::kTurnSpeedCfdMps;
      ref["label"] = "reference-only";
      break;
    }
    case ManeuverModel::horizontal: {
      const auto u = steady_of("u_mps");
      results["converged"] = u.has_value();
      if (u) results["steady_speed_mps"] = *u;
      break;
    }
    case ManeuverModel::vertical: {
      const auto w = steady_of("w_mps");
      results["converged"] = w.has_value();
      if (w) results["steady_speed_mps"] = *w;
      break;
    }
  }
  results["duration_s"] = m.duration;
  results["samples"] = traj.size();
  json doc;
  doc["results"] = results;
  if (!ref.empty()) doc["paper_reference"] = ref;

  // mode log: a lateral-thrust command implies the propellers were swung
  // out (in open water) ahead of the maneuver
  json mode_events = json::array();
  if (m.command.propellers_expanded) {
    ModeState ms;
    ms.in_pipe = false;
    ms = std::get<ModeState>(request_transition(ms, LocomotionMode::swim));
    mode_events.push_back({{"t_s", -ms.transition_duration},
                           {"mode", to_string(ms.mode)}});
    ms = tick(ms, ms.transition_duration);
    mode_events.push_back({{"t_s", 0.0}, {"mode", to_string(ms.mode)}});
    doc["command_admissible"] = command_admissible(ms, m.command);
  } else {
    mode_events.push_back({{"t_s", 0.0}, {"mode", "crawl"}});
    doc["command_admissible"] =
        command_admissible(ModeState{}, m.command);
  }
  doc["mode_events"] = mode_events;
  return doc;
}

json run_steady(const ScenarioConfig& cfg, const SteadyScenario& s) {
  const HydroParams& p = cfg.robot.params;
  json results;

  const ThrustResultants T = thrust_resultants(s.command, p);
  results["thrust_resultants"] = {
      {"X_T_N", T.X_T}, {"Z_T_N", T.Z_T}, {"M_T_Nm", T.M_T}, {"N_T_Nm", T.N_T}};

  if (T.X_T != 0.0 || T.N_T != 0.0) {
    const SteadyTurn turn = steady_turn(p, s.command);
    json jt = {
        {"u_ss_mps", turn.u_ss},
        {"r_ss_radps", turn.r_ss},
        {"r_ss_degps", turn.r_ss * kRadToDeg},
        {"tangential_speed_mps", turn.tangential_speed},
        {"turn_sense", to_string(turn.sense)},
    };
    if (std::isfinite(turn.diameter)) {
      jt["diameter_m"] = turn.diameter;
      if (turn.diameter > 0.0)
        jt["log10_diameter"] = std::log10(turn.diameter);
    } else {
      jt["diameter_m"] = "infinite";
    }
    results["turn"] = jt;
  }
  if (T.Z_T != 0.0)
    results["heave_speed_mps"] = steady_heave_speed(p, T.Z_T);
  if (T.X_T != 0.0)
    results["surge_speed_mps"] = steady_surge_speed(p, T.X_T);

  json doc;
  doc["results"] = results;
  doc["paper_reference"] = {
      {"paper_ode45_turn_speed_mps", refdata::kTurnSpeedModelMps},
      {"paper_ode45_turn_diameter_m", refdata::kTurnDiameterModelM},
      {"paper_ode45_surge_mps", refdata::kSurgeSpeedModelMps},
      {"paper_ode45_heave_mps", refdata::kHeaveSpeedModelMps},
      {"label", "reference-only"},
  };
  return doc;
}

json run_sweep(const ScenarioConfig& cfg, const SweepScenario& s,
               Outputs& out) {
  json results;
  std::ostringstream csv;

  if (s.kind == SweepKind::thrust_velocity) {
    const auto rows = sweep_thrust_velocity(cfg.robot.params, s.force_min,
                                            s.force_max, s.n_points);
    csv << "force_N,surge_speed_mps,heave_speed_mps\n";
    for (const auto& row : rows) {
      csv << format_full(row.force) << ',';
      csv << (row.surge_speed ? format_full(*row.surge_speed) : "error") << ',';
      csv << (row.heave_speed ? format_full(*row.heave_speed) : "error")
          << '\n';
    }
    results["rows"] = rows.size();
    results["force_min_N"] = s.force_min;
    results["force_max_N"] = s.force_max;
  } else {
    const SweepGrid grid =
        sweep_turn_map(cfg.robot.params, s.f_left_min, s.f_left_max,
                       s.f_right_min, s.f_right_max, s.grid_n);
    csv << "F_L_N,F_R_N,kind,speed_mps,log10_diameter,turn_sense\n";
    std::size_t n_inf = 0, n_zero = 0;
    for (std::size_t i = 0; i < grid.f_left.size(); ++i) {
      for (std::size_t j = 0; j < grid.f_right.size(); ++j) {
        const std::size_t idx = grid.index(i, j);
        const char* kind = "finite";
        if (grid.kind[idx] == CellKind::infinite_region) {
          kind = "infinite_region";
          ++n_inf;
        } else if (grid.kind[idx] == CellKind::infinitesimal_region) {
          kind = "infinitesimal_region";
          ++n_zero;
        }
        csv << format_full(grid.f_left[i]) << ',' << format_full(grid.f_right[j])
            << ',' << kind << ',' << format_full(grid.speed[idx]) << ',';
        if (grid.kind[idx] == CellKind::finite)
          csv << format_full(grid.log_diameter[idx]);
        csv << ',' << to_string(grid.sense[idx]) << '\n';
      }
    }
    results["grid_n"] = s.grid_n;
    results["cells"] = grid.kind.size();
    results["infinite_region_cells"] = n_inf;
    results["infinitesimal_region_cells"] = n_zero;
  }

  write_text(out.table(), csv.str(), out.overwrite);
  out.written.push_back(out.table());
  json doc;
  doc["results"] = results;
  return doc;
}

json run_gait(const GaitScenario& g, Outputs& out) {
  json results;

  if (g.catalog) {
    const auto rows = gait_catalog(g.spec.delta_l, g.spec.delta_t);
    std::ostringstream csv;
    csv << "gait_no,k,n_A,n_R,speed_mps,speed_cmps\n";
    json jrows = json::array();
    for (const auto& row : rows) {
      csv << row.gait_no << ',' << row.spec.k_modules << ','
          << row.spec.n_anchor << ',' << row.spec.n_relax << ','
          << format_full(row.speed_mps) << ','
          << format_full(row.speed_mps * 100.0) << '\n';
      jrows.push_back({{"gait_no", row.gait_no},
                       {"n_A", row.spec.n_anchor},
                       {"n_R", row.spec.n_relax},
                       {"speed_mps", row.speed_mps},
                       {"speed_cmps", row.speed_mps * 100.0}});
    }
    write_text(out.table(), csv.str(), out.overwrite);
    out.written.push_back(out.table());
    results["catalog"] = jrows;
  } else {
    const GaitTrajectory traj = simulate_gait(g.spec, g.l_min);
    std::ostringstream csv;
    csv << "t_s,head_position_m";
    for (int i = 0; i < g.spec.n_segments; ++i)
      csv << ",segment_" << i + 1 << "_length_m";
    csv << '\n';
    for (std::size_t b = 0; b < traj.step_times.size(); ++b) {
      csv << format_full(traj.step_times[b]) << ','
          << format_full(traj.head_position[b]);
      for (double len : traj.segment_lengths[b]) csv << ',' << format_full(len);
      csv << '\n';
    }
    write_text(out.table(), csv.str(), out.overwrite);
    out.written.push_back(out.table());

    const double closed_form = average_speed(g.spec);
    results["simulated_speed_mps"] = traj.average_speed();
    results["simulated_speed_cmps"] = traj.average_speed() * 100.0;
    results["closed_form_speed_mps"] = closed_form;
    results["closed_form_speed_cmps"] = closed_form * 100.0;
    results["displacement_m"] = traj.total_displacement();
    results["elapsed_s"] = traj.elapsed_time();
    results["steps_per_cycle"] = g.spec.steps_per_cycle();
    results["cycle_period_s"] =
        static_cast<double>(g.spec.steps_per_cycle()) * g.spec.delta_t;

    // slip analysis against the crawl experiment datum for the matching gait
    if (g.spec.n_segments == refdata::kGaitSegments &&
        g.spec.k_modules == 1 && g.spec.n_anchor == 1 &&
        g.spec.n_relax == 1) {
      const StrokeEstimate est = effective_stroke_from_measurement(
          g.spec, refdata::kCrawlMeasuredSpeedMps);
      results["slip_analysis"] = {
          {"measured_speed_mps", refdata::kCrawlMeasuredSpeedMps},
          {"delta_l_eff_m", est.delta_l_eff},
          {"delta_l_eff_mm", est.delta_l_eff * 1000.0},
          {"slip_ratio", est.slip_ratio},
      };
    }
  }

  json doc;
  doc["results"] = results;
  doc["paper_reference"] = {
      {"measured_reference_mmps", refdata::kCrawlMeasuredSpeedMps * 1000.0},
      {"measured_gait", "N=6 k=1 n_A=1 n_R=1"},
      {"measured_period_s", refdata::kCrawlGaitPeriodS},
      {"measured_actuation_angle_deg", refdata::kGaitActuationAngleDeg},
      {"label", "experimental"},
  };
  return doc;
}

json run_calibrate(const CalibrateScenario& c, Outputs& out) {
  const CalibrationResult cal = calibrate(c.targets, c.options);

  json coeffs = {
      {"X_uu", cal.coefficients.X_uu},   {"X_rr", cal.coefficients.X_rr},
      {"N_r", cal.coefficients.N_r},     {"N_rabsr", cal.coefficients.N_rabsr},
      {"Z_w", cal.coefficients.Z_w},     {"Z_wabsw", cal.coefficients.Z_wabsw},
      {"L_L", cal.coefficients.L_L},     {"L_R", cal.coefficients.L_R},
  };
  json doc;
  doc["results"] = {
      {"coefficients", coeffs},
      {"residuals",
       {{"surge_rel", cal.residuals.surge_rel},
        {"heave_rel", cal.residuals.heave_rel},
        {"turn_speed_rel", cal.residuals.turn_speed_rel},
        {"turn_diameter_rel", cal.residuals.turn_diameter_rel}}},
      {"notes", cal.notes},
  };
  // the coefficient file doubles as a robot damping block
  json coeff_file;
  coeff_file["damping"] = coeffs;
  coeff_file["residuals"] = doc["results"]["residuals"];
  write_text(out.table(), coeff_file.dump(2) + "\n", out.overwrite);
  out.written.push_back(out.table());
  return doc;
}

json run_added_mass(const AddedMassScenario& a) {
  const SpheroidAddedMass am = spheroid_added_mass(a.geometry);
  json doc;
  doc["results"] = {
      {"lambda11_kg", am.lambda11},
      {"lambda22_kg", am.lambda22},
      {"lambda33_kg", am.lambda33},
      {"lambda44_kgm2", am.lambda44},
      {"lambda55_kgm2", am.lambda55},
      {"lambda66_kgm2", am.lambda66},
      {"k1", am.k1},
      {"k2", am.k2},
      {"k_prime", am.k_prime},
      {"displaced_fluid_mass_kg", am.displaced_fluid_mass},
  };
  return doc;
}

}  // namespace

void write_trajectory(const Trajectory& traj,
                      const std::filesystem::path& path, bool overwrite) {
  if (traj.size() == 0)
    throw SimError(ErrorCode::invalid_target, "trajectory is empty");
  if (!traj.labels.empty() && traj.labels.size() != traj.states.front().size())
    throw SimError(ErrorCode::invalid_target,
                   "label count does not match the state size");

  std::ostringstream text;
  text << "t_s";
  const std::size_t n = traj.states.front().size();
  std::vector<bool> is_angle(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::string label =
        i < traj.labels.size() ? traj.labels[i] : "y" + std::to_string(i);
    text << ',' << label;
    if (label.size() > 4 && label.ends_with("_rad")) {
      is_angle[i] = true;
      text << ',' << label.substr(0, label.size() - 4) << "_deg";
    }
  }
  text << '\n';
  for (std::size_t s = 0; s < traj.size(); ++s) {
    text << format_full(traj.times[s]);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = traj.states[s][i];
      text << ',' << format_full(v);
      if (is_angle[i]) text << ',' << format_full(v * kRadToDeg);
    }
    text << '\n';
  }
  write_text(path, text.str(), overwrite);
}

void emit_summary(const std::string& summary_json,
                  const std::filesystem::path& path, bool overwrite) {
  write_text(path, summary_json, overwrite);
}

ScenarioArtifacts run_scenario(const ScenarioConfig& cfg,
                               const RunOptions& options) {
  Outputs out;
  out.dir = options.output_dir_override.empty()
                ? std::filesystem::path(cfg.output.directory)
                : std::filesystem::path(options.output_dir_override);
  out.names = cfg.output;
  out.overwrite = options.overwrite;

  json doc = std::visit(
      [&](const auto& block) -> json {
        using T = std::decay_t<decltype(block)>;
        if constexpr (std::is_same_v<T, ManeuverScenario>)
          return run_maneuver(cfg, block, out);
        else if constexpr (std::is_same_v<T, SteadyScenario>)
          return run_steady(cfg, block);
        else if constexpr (std::is_same_v<T, SweepScenario>)
          return run_sweep(cfg, block, out);
        else if constexpr (std::is_same_v<T, GaitScenario>)
          return run_gait(block, out);
        else if constexpr (std::is_same_v<T, CalibrateScenario>)
          return run_calibrate(block, out);
        else
          return run_added_mass(block);
      },
      cfg.scenario);

  doc["scenario"] = json::parse(serialize_config(cfg))["scenario"];
  if (cfg.needs_dynamics() || cfg.type == ScenarioType::calibrate) {
    doc["coefficient_provenance"] = provenance_json(cfg.robot);
    doc["params_fingerprint"] = fingerprint_hex(cfg.robot.params);
  }

  ScenarioArtifacts artifacts;
  artifacts.summary_json = doc.dump(2) + "\n";
  emit_summary(artifacts.summary_json, out.summary(), out.overwrite);
  out.written.push_back(out.summary());
  artifacts.files = std::move(out.written);
  return artifacts;
}

}  // namespace wormsim
