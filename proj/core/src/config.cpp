#include "wormsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

namespace wormsim {

using nlohmann::json;

namespace {

std::string join_path(const std::string& base, const std::string& key) {
  return base + "/" + key;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object())
    throw ConfigError(ConfigError::Kind::type_mismatch, path,
                      "expected an object");
}

void reject_unknown_keys(const json& j, const std::string& path,
                         const std::set<std::string>& allowed) {
  expect_object(j, path);
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key))
      throw ConfigError(ConfigError::Kind::unknown_key, join_path(path, key),
                        "unknown key \"" + key + "\"");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number())
    throw ConfigError(ConfigError::Kind::type_mismatch, path,
                      "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw ConfigError(ConfigError::Kind::type_mismatch, path,
                      "expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean())
    throw ConfigError(ConfigError::Kind::type_mismatch, path,
                      "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string())
    throw ConfigError(ConfigError::Kind::type_mismatch, path,
                      "expected a string");
  return j.get<std::string>();
}

/// Optional field accessors: apply `set` only when the key is present.
void opt_number(const json& j, const std::string& path, const char* key,
                const std::function<void(double)>& set) {
  if (j.contains(key)) set(get_number(j.at(key), join_path(path, key)));
}

void opt_int(const json& j, const std::string& path, const char* key,
             const std::function<void(int)>& set) {
  if (j.contains(key)) set(get_int(j.at(key), join_path(path, key)));
}

void opt_bool(const json& j, const std::string& path, const char* key,
              const std::function<void(bool)>& set) {
  if (j.contains(key)) set(get_bool(j.at(key), join_path(path, key)));
}

// field tables shared by the parser and serializer
using FieldPtr = double HydroParams::*;

const std::map<std::string, FieldPtr>& added_mass_fields() {
  static const std::map<std::string, FieldPtr> fields = {
      {"lambda11", &HydroParams::lambda11},
      {"lambda22", &HydroParams::lambda22},
      {"lambda33", &HydroParams::lambda33},
      {"lambda44", &HydroParams::lambda44},
      {"lambda55", &HydroParams::lambda55},
      {"lambda66", &HydroParams::lambda66},
  };
  return fields;
}

const std::map<std::string, FieldPtr>& damping_fields() {
  static const std::map<std::string, FieldPtr> fields = {
      {"X_uu", &HydroParams::X_uu},       {"X_vv", &HydroParams::X_vv},
      {"X_rr", &HydroParams::X_rr},       {"X_vr", &HydroParams::X_vr},
      {"Y_v", &HydroParams::Y_v},         {"Y_r", &HydroParams::Y_r},
      {"Y_vabsv", &HydroParams::Y_vabsv}, {"Y_rabsr", &HydroParams::Y_rabsr},
      {"Y_vabsr", &HydroParams::Y_vabsr}, {"N_v", &HydroParams::N_v},
      {"N_r", &HydroParams::N_r},         {"N_vabsv", &HydroParams::N_vabsv},
      {"N_rabsr", &HydroParams::N_rabsr}, {"N_vabsr", &HydroParams::N_vabsr},
      {"Z_w", &HydroParams::Z_w},         {"Z_absw", &HydroParams::Z_absw},
      {"Z_q", &HydroParams::Z_q},         {"Z_wabsw", &HydroParams::Z_wabsw},
      {"Z_ww", &HydroParams::Z_ww},       {"Z_wabsq", &HydroParams::Z_wabsq},
      {"Z_qabsq", &HydroParams::Z_qabsq}, {"M_w", &HydroParams::M_w},
      {"M_absw", &HydroParams::M_absw},   {"M_q", &HydroParams::M_q},
      {"M_wabsw", &HydroParams::M_wabsw}, {"M_ww", &HydroParams::M_ww},
      {"M_wabsq", &HydroParams::M_wabsq}, {"M_qabsq", &HydroParams::M_qabsq},
  };
  return fields;
}

const std::map<std::string, FieldPtr>& arm_fields() {
  static const std::map<std::string, FieldPtr> fields = {
      {"L_L", &HydroParams::L_L},
      {"L_R", &HydroParams::L_R},
      {"L_F", &HydroParams::L_F},
      {"L_B", &HydroParams::L_B},
  };
  return fields;
}

void parse_field_group(const json& j, const std::string& path,
                       const std::map<std::string, FieldPtr>& fields,
                       RobotProfile& robot,
                       std::vector<std::string>& user_fields) {
  std::set<std::string> allowed;
  for (const auto& [name, _] : fields) allowed.insert(name);
  reject_unknown_keys(j, path, allowed);
  for (const auto& [name, ptr] : fields) {
    if (!j.contains(name)) continue;
    robot.params.*ptr = get_number(j.at(name), join_path(path, name));
    robot.set(name, Provenance::user_supplied);
    user_fields.push_back(name);
  }
}

RobotProfile parse_robot(const json& j, const std::string& path,
                         std::vector<std::string>& user_fields) {
  reject_unknown_keys(j, path,
                      {"profile", "mass", "inertia", "added_mass", "spheroid",
                       "damping", "arms"});

  RobotProfile robot;
  std::string base = "reference";
  if (j.contains("profile"))
    base = get_string(j.at("profile"), join_path(path, "profile"));
  if (base == "reference") {
    robot = reference_profile();
  } else if (base == "blank") {
    robot = RobotProfile{};
  } else {
    throw ConfigError(ConfigError::Kind::bad_value, join_path(path, "profile"),
                      "profile must be \"reference\" or \"blank\"");
  }

  if (j.contains("mass")) {
    robot.params.mass = get_number(j.at("mass"), join_path(path, "mass"));
    robot.set("mass", Provenance::user_supplied);
    user_fields.push_back("mass");
  }
  if (j.contains("inertia")) {
    const json& ji = j.at("inertia");
    const std::string pi = join_path(path, "inertia");
    reject_unknown_keys(ji, pi, {"Jx", "Jy", "Jz"});
    static const std::map<std::string, FieldPtr> inertia = {
        {"Jx", &HydroParams::Jx},
        {"Jy", &HydroParams::Jy},
        {"Jz", &HydroParams::Jz}};
    for (const auto& [name, ptr] : inertia) {
      if (!ji.contains(name)) continue;
      robot.params.*ptr = get_number(ji.at(name), join_path(pi, name));
      robot.set(name, Provenance::user_supplied);
      user_fields.push_back(name);
    }
  }
  if (j.contains("added_mass") && j.contains("spheroid"))
    throw ConfigError(ConfigError::Kind::bad_value,
                      join_path(path, "spheroid"),
                      "give either explicit added_mass or a spheroid block, "
                      "not both");
  if (j.contains("added_mass"))
    parse_field_group(j.at("added_mass"), join_path(path, "added_mass"),
                      added_mass_fields(), robot, user_fields);
  if (j.contains("spheroid")) {
    const json& js = j.at("spheroid");
    const std::string ps = join_path(path, "spheroid");
    reject_unknown_keys(js, ps,
                        {"semi_major_a", "semi_minor_b", "fluid_density_rho"});
    SpheroidGeometry geom;
    if (!js.contains("semi_major_a") || !js.contains("semi_minor_b"))
      throw ConfigError(ConfigError::Kind::missing_field, ps,
                        "spheroid needs semi_major_a and semi_minor_b");
    geom.semi_major_a =
        get_number(js.at("semi_major_a"), join_path(ps, "semi_major_a"));
    geom.semi_minor_b =
        get_number(js.at("semi_minor_b"), join_path(ps, "semi_minor_b"));
    opt_number(js, ps, "fluid_density_rho",
               [&](double v) { geom.fluid_density_rho = v; });
    try {
      apply_added_mass(robot.params, spheroid_added_mass(geom));
    } catch (const std::exception& e) {
      throw ConfigError(ConfigError::Kind::invariant_violation, ps, e.what());
    }
    for (const auto& [name, _] : added_mass_fields())
      robot.set(name, Provenance::spheroid_derived);
  }
  if (j.contains("damping"))
    parse_field_group(j.at("damping"), join_path(path, "damping"),
                      damping_fields(), robot, user_fields);
  if (j.contains("arms"))
    parse_field_group(j.at("arms"), join_path(path, "arms"), arm_fields(),
                      robot, user_fields);
  return robot;
}

IntegratorConfig parse_integrator(const json& j, const std::string& path) {
  reject_unknown_keys(j, path,
                      {"rel_tol", "abs_tol", "h_init", "h_min", "h_max",
                       "method", "output_dt"});
  IntegratorConfig cfg;
  opt_number(j, path, "rel_tol", [&](double v) { cfg.rel_tol = v; });
  opt_number(j, path, "abs_tol", [&](double v) { cfg.abs_tol = v; });
  opt_number(j, path, "h_init", [&](double v) { cfg.h_init = v; });
  opt_number(j, path, "h_min", [&](double v) { cfg.h_min = v; });
  opt_number(j, path, "h_max", [&](double v) { cfg.h_max = v; });
  opt_number(j, path, "output_dt", [&](double v) { cfg.output_dt = v; });
  if (j.contains("method")) {
    const std::string m = get_string(j.at("method"), join_path(path, "method"));
    if (m == "adaptive54")
      cfg.method = Method::adaptive54;
    else if (m == "fixed_rk4")
      cfg.method = Method::fixed_rk4;
    else
      throw ConfigError(ConfigError::Kind::bad_value, join_path(path, "method"),
                        "method must be \"adaptive54\" or \"fixed_rk4\"");
  }
  auto v = cfg.violations();
  if (!v.empty())
    throw ConfigError(ConfigError::Kind::invariant_violation, path, v.front());
  return cfg;
}

ThrustCommand parse_command(const json& j, const std::string& path) {
  reject_unknown_keys(j, path,
                      {"F_L", "F_R", "F_F", "F_B", "propellers_expanded"});
  ThrustCommand cmd;
  opt_number(j, path, "F_L", [&](double v) { cmd.F_L = v; });
  opt_number(j, path, "F_R", [&](double v) { cmd.F_R = v; });
  opt_number(j, path, "F_F", [&](double v) { cmd.F_F = v; });
  opt_number(j, path, "F_B", [&](double v) { cmd.F_B = v; });
  // default: lateral thrust implies the propellers are out
  cmd.propellers_expanded = (cmd.F_L != 0.0 || cmd.F_R != 0.0);
  opt_bool(j, path, "propellers_expanded",
           [&](bool v) { cmd.propellers_expanded = v; });
  auto v = cmd.violations();
  if (!v.empty())
    throw ConfigError(ConfigError::Kind::invariant_violation, path, v.front());
  return cmd;
}

GaitSpec parse_gait_spec(const json& j, const std::string& path) {
  reject_unknown_keys(
      j, path, {"N", "k", "n_A", "n_R", "delta_l", "delta_t", "mu"});
  GaitSpec spec;
  opt_int(j, path, "N", [&](int v) { spec.n_segments = v; });
  opt_int(j, path, "k", [&](int v) { spec.k_modules = v; });
  opt_int(j, path, "n_A", [&](int v) { spec.n_anchor = v; });
  opt_int(j, path, "n_R", [&](int v) { spec.n_relax = v; });
  opt_number(j, path, "delta_l", [&](double v) { spec.delta_l = v; });
  opt_number(j, path, "delta_t", [&](double v) { spec.delta_t = v; });
  opt_int(j, path, "mu", [&](int v) { spec.mu_cycles = v; });
  auto violations = validate_gait(spec);
  if (!violations.empty())
    throw ConfigError(ConfigError::Kind::invariant_violation, path,
                      violations.front());
  return spec;
}

CalibrationTargets parse_targets(const json& j, const std::string& path) {
  reject_unknown_keys(j, path,
                      {"surge_thrust_N", "surge_speed_mps", "heave_thrust_N",
                       "heave_speed_mps", "turn_F_L", "turn_F_R",
                       "turn_speed_mps", "turn_diameter_m", "arm_L_L",
                       "arm_L_R"});
  CalibrationTargets t;
  opt_number(j, path, "surge_thrust_N", [&](double v) { t.surge_thrust_N = v; });
  opt_number(j, path, "surge_speed_mps",
             [&](double v) { t.surge_speed_mps = v; });
  opt_number(j, path, "heave_thrust_N", [&](double v) { t.heave_thrust_N = v; });
  opt_number(j, path, "heave_speed_mps",
             [&](double v) { t.heave_speed_mps = v; });
  opt_number(j, path, "turn_F_L", [&](double v) { t.turn_F_L = v; });
  opt_number(j, path, "turn_F_R", [&](double v) { t.turn_F_R = v; });
  opt_number(j, path, "turn_speed_mps", [&](double v) { t.turn_speed_mps = v; });
  opt_number(j, path, "turn_diameter_m",
             [&](double v) { t.turn_diameter_m = v; });
  opt_number(j, path, "arm_L_L", [&](double v) { t.arm_L_L = v; });
  opt_number(j, path, "arm_L_R", [&](double v) { t.arm_L_R = v; });
  auto v = t.violations();
  if (!v.empty())
    throw ConfigError(ConfigError::Kind::invariant_violation, path, v.front());
  return t;
}

std::pair<ScenarioType, ScenarioBlock> parse_scenario(const json& j,
                                                      const std::string& path) {
  reject_unknown_keys(j, path,
                      {"type", "maneuver", "steady", "sweep", "gait",
                       "calibrate", "added_mass"});
  if (!j.contains("type"))
    throw ConfigError(ConfigError::Kind::missing_field, join_path(path, "type"),
                      "scenario type is required");
  const std::string type_name =
      get_string(j.at("type"), join_path(path, "type"));

  static const std::map<std::string, ScenarioType> types = {
      {"maneuver", ScenarioType::maneuver},
      {"steady", ScenarioType::steady},
      {"sweep", ScenarioType::sweep},
      {"gait", ScenarioType::gait},
      {"calibrate", ScenarioType::calibrate},
      {"added_mass", ScenarioType::added_mass},
  };
  auto it = types.find(type_name);
  if (it == types.end())
    throw ConfigError(ConfigError::Kind::bad_value, join_path(path, "type"),
                      "unknown scenario type \"" + type_name + "\"");
  const ScenarioType type = it->second;

  // exactly one scenario block, and it must match the declared type
  for (const auto& [name, _] : types) {
    if (j.contains(name) && name != type_name)
      throw ConfigError(ConfigError::Kind::bad_value, join_path(path, name),
                        "scenario block \"" + name +
                            "\" does not match type \"" + type_name + "\"");
  }

  switch (type) {
    case ScenarioType::maneuver: {
      if (!j.contains("maneuver"))
        throw ConfigError(ConfigError::Kind::missing_field,
                          join_path(path, "maneuver"),
                          "maneuver block is required");
      const json& jm = j.at("maneuver");
      const std::string pm = join_path(path, "maneuver");
      reject_unknown_keys(jm, pm,
                          {"model", "command", "duration", "initial_state"});
      ManeuverScenario m;
      if (jm.contains("model")) {
        const std::string name =
            get_string(jm.at("model"), join_path(pm, "model"));
        static const std::map<std::string, ManeuverModel> models = {
            {"turn", ManeuverModel::turn},
            {"horizontal", ManeuverModel::horizontal},
            {"vertical", ManeuverModel::vertical},
            {"surge", ManeuverModel::surge},
            {"heave", ManeuverModel::heave},
        };
        auto mit = models.find(name);
        if (mit == models.end())
          throw ConfigError(ConfigError::Kind::bad_value,
                            join_path(pm, "model"),
                            "unknown maneuver model \"" + name + "\"");
        m.model = mit->second;
      }
      if (jm.contains("command"))
        m.command = parse_command(jm.at("command"), join_path(pm, "command"));
      opt_number(jm, pm, "duration", [&](double v) { m.duration = v; });
      if (!(m.duration > 0.0))
        throw ConfigError(ConfigError::Kind::invariant_violation,
                          join_path(pm, "duration"), "duration must be > 0");
      if (jm.contains("initial_state")) {
        const json& js = jm.at("initial_state");
        if (!js.is_array())
          throw ConfigError(ConfigError::Kind::type_mismatch,
                            join_path(pm, "initial_state"),
                            "expected an array of numbers");
        for (std::size_t i = 0; i < js.size(); ++i)
          m.initial_state.push_back(get_number(
              js.at(i), join_path(pm, "initial_state") + "/" +
                            std::to_string(i)));
      }
      return {type, m};
    }
    case ScenarioType::steady: {
      if (!j.contains("steady"))
        throw ConfigError(ConfigError::Kind::missing_field,
                          join_path(path, "steady"),
                          "steady block is required");
      const json& js = j.at("steady");
      const std::string ps = join_path(path, "steady");
      reject_unknown_keys(js, ps, {"command"});
      SteadyScenario s;
      if (js.contains("command"))
        s.command = parse_command(js.at("command"), join_path(ps, "command"));
      return {type, s};
    }
    case ScenarioType::sweep: {
      if (!j.contains("sweep"))
        throw ConfigError(ConfigError::Kind::missing_field,
                          join_path(path, "sweep"), "sweep block is required");
      const json& js = j.at("sweep");
      const std::string ps = join_path(path, "sweep");
      reject_unknown_keys(js, ps,
                          {"kind", "force_min", "force_max", "n_points",
                           "f_left_min", "f_left_max", "f_right_min",
                           "f_right_max", "grid_n"});
      SweepScenario s;
      if (js.contains("kind")) {
        const std::string name = get_string(js.at("kind"), join_path(ps, "kind"));
        if (name == "thrust_velocity")
          s.kind = SweepKind::thrust_velocity;
        else if (name == "turn_map")
          s.kind = SweepKind::turn_map;
        else
          throw ConfigError(ConfigError::Kind::bad_value, join_path(ps, "kind"),
                            "sweep kind must be \"thrust_velocity\" or "
                            "\"turn_map\"");
      }
      opt_number(js, ps, "force_min", [&](double v) { s.force_min = v; });
      opt_number(js, ps, "force_max", [&](double v) { s.force_max = v; });
      opt_int(js, ps, "n_points", [&](int v) { s.n_points = v; });
      opt_number(js, ps, "f_left_min", [&](double v) { s.f_left_min = v; });
      opt_number(js, ps, "f_left_max", [&](double v) { s.f_left_max = v; });
      opt_number(js, ps, "f_right_min", [&](double v) { s.f_right_min = v; });
      opt_number(js, ps, "f_right_max", [&](double v) { s.f_right_max = v; });
      opt_int(js, ps, "grid_n", [&](int v) { s.grid_n = v; });
      if (s.n_points < 2)
        throw ConfigError(ConfigError::Kind::invariant_violation,
                          join_path(ps, "n_points"), "n_points must be >= 2");
      if (s.grid_n < 2)
        throw ConfigError(ConfigError::Kind::invariant_violation,
                          join_path(ps, "grid_n"), "grid_n must be >= 2");
      return {type, s};
    }
    case ScenarioType::gait: {
      if (!j.contains("gait"))
        throw ConfigError(ConfigError::Kind::missing_field,
                          join_path(path, "gait"), "gait block is required");
      const json& jg = j.at("gait");
      const std::string pg = join_path(path, "gait");
      reject_unknown_keys(jg, pg,
                          {"N", "k", "n_A", "n_R", "delta_l", "delta_t", "mu",
                           "l_min", "catalog"});
      GaitScenario g;
      json spec_only = jg;
      spec_only.erase("l_min");
      spec_only.erase("catalog");
      g.spec = parse_gait_spec(spec_only, pg);
      opt_number(jg, pg, "l_min", [&](double v) { g.l_min = v; });
      opt_bool(jg, pg, "catalog", [&](bool v) { g.catalog = v; });
      if (!(g.l_min > 0.0))
        throw ConfigError(ConfigError::Kind::invariant_violation,
                          join_path(pg, "l_min"), "l_min must be > 0");
      return {type, g};
    }
    case ScenarioType::calibrate: {
      if (!j.contains("calibrate"))
        throw ConfigError(ConfigError::Kind::missing_field,
                          join_path(path, "calibrate"),
                          "calibrate block is required");
      const json& jc = j.at("calibrate");
      const std::string pc = join_path(path, "calibrate");
      reject_unknown_keys(jc, pc, {"targets", "split", "quadratic_fraction"});
      CalibrateScenario c;
      if (jc.contains("targets"))
        c.targets = parse_targets(jc.at("targets"), join_path(pc, "targets"));
      if (jc.contains("split")) {
        const std::string name =
            get_string(jc.at("split"), join_path(pc, "split"));
        if (name == "quadratic_only")
          c.options.split = DampingSplit::quadratic_only;
        else if (name == "linear_only")
          c.options.split = DampingSplit::linear_only;
        else if (name == "fixed_ratio")
          c.options.split = DampingSplit::fixed_ratio;
        else
          throw ConfigError(ConfigError::Kind::bad_value,
                            join_path(pc, "split"),
                            "split must be quadratic_only, linear_only or "
                            "fixed_ratio");
      }
      opt_number(jc, pc, "quadratic_fraction",
                 [&](double v) { c.options.quadratic_fraction = v; });
      return {type, c};
    }
    case ScenarioType::added_mass: {
      if (!j.contains("added_mass"))
        throw ConfigError(ConfigError::Kind::missing_field,
                          join_path(path, "added_mass"),
                          "added_mass block is required");
      const json& ja = j.at("added_mass");
      const std::string pa = join_path(path, "added_mass");
      reject_unknown_keys(
          ja, pa, {"semi_major_a", "semi_minor_b", "fluid_density_rho"});
      AddedMassScenario a;
      if (!ja.contains("semi_major_a") || !ja.contains("semi_minor_b"))
        throw ConfigError(ConfigError::Kind::missing_field, pa,
                          "added_mass needs semi_major_a and semi_minor_b");
      a.geometry.semi_major_a = get_number(ja.at("semi_major_a"),
                                           join_path(pa, "semi_major_a"));
      a.geometry.semi_minor_b = get_number(ja.at("semi_minor_b"),
                                           join_path(pa, "semi_minor_b"));
      opt_number(ja, pa, "fluid_density_rho",
                 [&](double v) { a.geometry.fluid_density_rho = v; });
      if (!(a.geometry.semi_major_a > 0.0) ||
          !(a.geometry.semi_minor_b > 0.0) ||
          !(a.geometry.fluid_density_rho > 0.0) ||
          a.geometry.semi_major_a < a.geometry.semi_minor_b)
        throw ConfigError(ConfigError::Kind::invariant_violation, pa,
                          "spheroid needs a >= b > 0 and rho > 0");
      return {type, a};
    }
  }
  throw ConfigError(ConfigError::Kind::parse, path, "unreachable");
}

OutputConfig parse_output(const json& j, const std::string& path) {
  reject_unknown_keys(
      j, path, {"directory", "trajectory_file", "table_file", "summary_file"});
  OutputConfig out;
  if (j.contains("directory"))
    out.directory = get_string(j.at("directory"), join_path(path, "directory"));
  if (j.contains("trajectory_file"))
    out.trajectory_file = get_string(j.at("trajectory_file"),
                                     join_path(path, "trajectory_file"));
  if (j.contains("table_file"))
    out.table_file =
        get_string(j.at("table_file"), join_path(path, "table_file"));
  if (j.contains("summary_file"))
    out.summary_file =
        get_string(j.at("summary_file"), join_path(path, "summary_file"));
  std::set<std::string> names{out.trajectory_file, out.table_file,
                              out.summary_file};
  if (names.size() != 3)
    throw ConfigError(ConfigError::Kind::bad_value, path,
                      "output file names collide");
  return out;
}

}  // namespace

ConfigError::ConfigError(Kind kind, const std::string& path,
                         const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) +
                         (path.empty() ? "" : " at " + path) + ": " + message),
      kind_(kind),
      path_(path) {}

const char* to_string(ConfigError::Kind kind) {
  switch (kind) {
    case ConfigError::Kind::parse: return "parse-error";
    case ConfigError::Kind::unknown_key: return "unknown-key";
    case ConfigError::Kind::missing_field: return "missing-field";
    case ConfigError::Kind::type_mismatch: return "type-mismatch";
    case ConfigError::Kind::invariant_violation: return "invariant-violation";
    case ConfigError::Kind::bad_value: return "bad-value";
  }
  return "unknown";
}

const char* to_string(ScenarioType type) {
  switch (type) {
    case ScenarioType::maneuver: return "maneuver";
    case ScenarioType::steady: return "steady";
    case ScenarioType::sweep: return "sweep";
    case ScenarioType::gait: return "gait";
    case ScenarioType::calibrate: return "calibrate";
    case ScenarioType::added_mass: return "added_mass";
  }
  return "unknown";
}

const char* to_string(ManeuverModel model) {
  switch (model) {
    case ManeuverModel::turn: return "turn";
    case ManeuverModel::horizontal: return "horizontal";
    case ManeuverModel::vertical: return "vertical";
    case ManeuverModel::surge: return "surge";
    case ManeuverModel::heave: return "heave";
  }
  return "unknown";
}

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::thrust_velocity: return "thrust_velocity";
    case SweepKind::turn_map: return "turn_map";
  }
  return "unknown";
}

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::parse, "", e.what());
  }
  reject_unknown_keys(root, "", {"robot", "integrator", "scenario", "output"});

  ScenarioConfig cfg;
  std::vector<std::string> user_fields;

  if (root.contains("robot"))
    cfg.robot = parse_robot(root.at("robot"), "/robot", user_fields);
  else
    cfg.robot = reference_profile();

  if (root.contains("integrator"))
    cfg.integrator = parse_integrator(root.at("integrator"), "/integrator");

  if (!root.contains("scenario"))
    throw ConfigError(ConfigError::Kind::missing_field, "/scenario",
                      "scenario block is required");
  std::tie(cfg.type, cfg.scenario) =
      parse_scenario(root.at("scenario"), "/scenario");

  if (root.contains("output"))
    cfg.output = parse_output(root.at("output"), "/output");

  // invariant checks: everything a scenario will touch must already be valid
  const auto violations = cfg.robot.params.violations();
  if (cfg.needs_dynamics()) {
    if (!violations.empty())
      throw ConfigError(ConfigError::Kind::invariant_violation, "/robot",
                        violations.front());
  } else {
    // the robot block is unused here, but user-supplied sign constraints
    // must still hold (positivity of mass/inertia only matters to dynamics)
    for (const auto& v : violations) {
      if (v.find("must be >= 0") == std::string::npos) continue;
      for (const auto& f : user_fields) {
        if (v.rfind(f + " ", 0) == 0)
          throw ConfigError(ConfigError::Kind::invariant_violation,
                            "/robot", v);
      }
    }
  }
  return cfg;
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json root;

  json robot;
  robot["profile"] = "blank";
  robot["mass"] = cfg.robot.params.mass;
  robot["inertia"] = {{"Jx", cfg.robot.params.Jx},
                      {"Jy", cfg.robot.params.Jy},
                      {"Jz", cfg.robot.params.Jz}};
  json am, damping, arms;
  for (const auto& [name, ptr] : added_mass_fields())
    am[name] = cfg.robot.params.*ptr;
  for (const auto& [name, ptr] : damping_fields())
    damping[name] = cfg.robot.params.*ptr;
  for (const auto& [name, ptr] : arm_fields())
    arms[name] = cfg.robot.params.*ptr;
  robot["added_mass"] = am;
  robot["damping"] = damping;
  robot["arms"] = arms;
  root["robot"] = robot;

  root["integrator"] = {
      {"rel_tol", cfg.integrator.rel_tol},
      {"abs_tol", cfg.integrator.abs_tol},
      {"h_init", cfg.integrator.h_init},
      {"h_min", cfg.integrator.h_min},
      {"h_max", cfg.integrator.h_max},
      {"method",
       cfg.integrator.method == Method::adaptive54 ? "adaptive54"
                                                   : "fixed_rk4"},
      {"output_dt", cfg.integrator.output_dt},
  };

  json scenario;
  scenario["type"] = to_string(cfg.type);
  std::visit(
      [&](const auto& block) {
        using T = std::decay_t<decltype(block)>;
        if constexpr (std::is_same_v<T, ManeuverScenario>) {
          json m;
          m["model"] = to_string(block.model);
          m["command"] = {{"F_L", block.command.F_L},
                          {"F_R", block.command.F_R},
                          {"F_F", block.command.F_F},
                          {"F_B", block.command.F_B},
                          {"propellers_expanded",
                           block.command.propellers_expanded}};
          m["duration"] = block.duration;
          if (!block.initial_state.empty())
            m["initial_state"] = block.initial_state;
          scenario["maneuver"] = m;
        } else if constexpr (std::is_same_v<T, SteadyScenario>) {
          scenario["steady"] = {
              {"command",
               {{"F_L", block.command.F_L},
                {"F_R", block.command.F_R},
                {"F_F", block.command.F_F},
                {"F_B", block.command.F_B},
                {"propellers_expanded", block.command.propellers_expanded}}}};
        } else if constexpr (std::is_same_v<T, SweepScenario>) {
          scenario["sweep"] = {
              {"kind", to_string(block.kind)},
              {"force_min", block.force_min},
              {"force_max", block.force_max},
              {"n_points", block.n_points},
              {"f_left_min", block.f_left_min},
              {"f_left_max", block.f_left_max},
              {"f_right_min", block.f_right_min},
              {"f_right_max", block.f_right_max},
              {"grid_n", block.grid_n},
          };
        } else if constexpr (std::is_same_v<T, GaitScenario>) {
          scenario["gait"] = {
              {"N", block.spec.n_segments},
              {"k", block.spec.k_modules},
              {"n_A", block.spec.n_anchor},
              {"n_R", block.spec.n_relax},
              {"delta_l", block.spec.delta_l},
              {"delta_t", block.spec.delta_t},
              {"mu", block.spec.mu_cycles},
              {"l_min", block.l_min},
              {"catalog", block.catalog},
          };
        } else if constexpr (std::is_same_v<T, CalibrateScenario>) {
          json c;
          c["targets"] = {
              {"surge_thrust_N", block.targets.surge_thrust_N},
              {"surge_speed_mps", block.targets.surge_speed_mps},
              {"heave_thrust_N", block.targets.heave_thrust_N},
              {"heave_speed_mps", block.targets.heave_speed_mps},
              {"turn_F_L", block.targets.turn_F_L},
              {"turn_F_R", block.targets.turn_F_R},
              {"turn_speed_mps", block.targets.turn_speed_mps},
              {"turn_diameter_m", block.targets.turn_diameter_m},
              {"arm_L_L", block.targets.arm_L_L},
              {"arm_L_R", block.targets.arm_L_R},
          };
          switch (block.options.split) {
            case DampingSplit::quadratic_only: c["split"] = "quadratic_only"; break;
            case DampingSplit::linear_only: c["split"] = "linear_only"; break;
            case DampingSplit::fixed_ratio: c["split"] = "fixed_ratio"; break;
          }
          c["quadratic_fraction"] = block.options.quadratic_fraction;
          scenario["calibrate"] = c;
        } else if constexpr (std::is_same_v<T, AddedMassScenario>) {
          scenario["added_mass"] = {
              {"semi_major_a", block.geometry.semi_major_a},
              {"semi_minor_b", block.geometry.semi_minor_b},
              {"fluid_density_rho", block.geometry.fluid_density_rho},
          };
        }
      },
      cfg.scenario);
  root["scenario"] = scenario;

  root["output"] = {
      {"directory", cfg.output.directory},
      {"trajectory_file", cfg.output.trajectory_file},
      {"table_file", cfg.output.table_file},
      {"summary_file", cfg.output.summary_file},
  };
  return root.dump(2) + "\n";
}

}  // namespace wormsim
