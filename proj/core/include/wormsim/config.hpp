#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wormsim/gait.hpp"
#include "wormsim/hydro.hpp"
#include "wormsim/integrate.hpp"
#include "wormsim/profile.hpp"
#include "wormsim/steady.hpp"

namespace wormsim {

/// Configuration faults: each carries a machine-readable kind and the JSON
/// pointer-style path of the offending field. The CLI maps these onto exit
/// code 2.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind {
    parse,
    unknown_key,
    missing_field,
    type_mismatch,
    invariant_violation,
    bad_value,
  };

  ConfigError(Kind kind, const std::string& path, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

 private:
  Kind kind_;
  std::string path_;
};

const char* to_string(ConfigError::Kind kind);

enum class ScenarioType { maneuver, steady, sweep, gait, calibrate, added_mass };

const char* to_string(ScenarioType type);

enum class ManeuverModel { turn, horizontal, vertical, surge, heave };

const char* to_string(ManeuverModel model);

struct ManeuverScenario {
  ManeuverModel model = ManeuverModel::turn;
  ThrustCommand command;
  double duration = 60.0;  // s
  // optional initial state in the model's component order; zeros otherwise
  std::vector<double> initial_state;
};

struct SteadyScenario {
  ThrustCommand command;
};

enum class SweepKind { thrust_velocity, turn_map };

const char* to_string(SweepKind kind);

struct SweepScenario {
  SweepKind kind = SweepKind::turn_map;
  // thrust_velocity
  double force_min = 0.0;
  double force_max = 10.0;
  int n_points = 101;
  // turn_map
  double f_left_min = -10.0;
  double f_left_max = 10.0;
  double f_right_min = -10.0;
  double f_right_max = 10.0;
  int grid_n = 101;
};

struct GaitScenario {
  GaitSpec spec;
  double l_min = 0.080;  // m
  bool catalog = false;  // emit the six-gait reference table instead
};

struct CalibrateScenario {
  CalibrationTargets targets;
  CalibrationOptions options;
};

struct AddedMassScenario {
  SpheroidGeometry geometry;
};

struct OutputConfig {
  std::string directory = "out";
  std::string trajectory_file = "trajectory.csv";
  std::string table_file = "table.csv";
  std::string summary_file = "summary.json";
};

using ScenarioBlock =
    std::variant<ManeuverScenario, SteadyScenario, SweepScenario, GaitScenario,
                 CalibrateScenario, AddedMassScenario>;

struct ScenarioConfig {
  RobotProfile robot;          // defaults to the reference profile
  IntegratorConfig integrator;
  ScenarioType type = ScenarioType::maneuver;
  ScenarioBlock scenario;
  OutputConfig output;

  bool needs_dynamics() const {
    return type == ScenarioType::maneuver || type == ScenarioType::steady ||
           type == ScenarioType::sweep;
  }
};

/// Strict parse of the JSON configuration document: unknown keys, missing
/// required fields, type mismatches and invariant violations all throw
/// ConfigError with the offending path. Defaults are applied only where the
/// schema defines them.
ScenarioConfig parse_config(const std::string& text);

/// Normalized serialization (defaults filled in, keys sorted);
/// parse(serialize(parse(text))) sees identical semantic content.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace wormsim
