#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wormsim/errors.hpp"
#include "wormsim/scenario.hpp"

using namespace wormsim;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("wormsim_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json run_to_summary(const std::string& config_text, const TempDir& dir) {
  const ScenarioConfig cfg = parse_config(config_text);
  RunOptions opt;
  opt.output_dir_override = dir.path.string();
  const ScenarioArtifacts artifacts = run_scenario(cfg, opt);
  return json::parse(artifacts.summary_json);
}

}  // namespace

TEST_CASE("surge scenario summary carries the published annotations") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "maneuver",
                 "maneuver": {"model": "surge",
                              "command": {"F_L": 0.3, "F_R": 0.3},
                              "duration": 60}}
  })",
                                  dir);
  CHECK(doc["results"]["converged"] == true);
  CHECK(std::abs(doc["results"]["steady_speed_mps"].get<double>() - 0.374) <
        0.374 * 5e-3);
  CHECK(doc["paper_reference"]["paper_ode45_mps"] == 0.374);
  CHECK(doc["paper_reference"]["label"] == "reference-only");
  CHECK(doc.contains("coefficient_provenance"));
  CHECK(doc["coefficient_provenance"]["X_uu"] == "calibrated");
}

TEST_CASE("heave scenario summary labels the CFD value reference-only") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "maneuver",
                 "maneuver": {"model": "heave",
                              "command": {"F_F": 1, "F_B": 1},
                              "duration": 60}}
  })",
                                  dir);
  CHECK(std::abs(doc["results"]["steady_speed_mps"].get<double>() - 0.234) <
        0.234 * 5e-3);
  CHECK(doc["paper_reference"]["paper_cfd_mps"] == 0.251);
  CHECK(doc["paper_reference"]["label"] == "reference-only");
}

TEST_CASE("turn scenario reports the fitted circle next to both references") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "maneuver",
                 "maneuver": {"model": "turn",
                              "command": {"F_L": 10, "F_R": -5},
                              "duration": 120}}
  })",
                                  dir);
  const double diameter =
      doc["results"]["fitted_circle"]["diameter_m"].get<double>();
  CHECK(std::abs(diameter - 1.733) < 1.733 * 0.01);
  CHECK(doc["paper_reference"]["paper_ode45_diameter_m"] == 1.733);
  CHECK(doc["paper_reference"]["paper_cfd_diameter_m"] == 1.756);

  // lateral thrust implies an expansion event before the maneuver
  REQUIRE(doc.contains("mode_events"));
  CHECK(doc["mode_events"].back()["mode"] == "swim");
  CHECK(doc["mode_events"].back()["t_s"] == 0.0);
  CHECK(doc["command_admissible"] == true);
}

TEST_CASE("gait scenario summary carries the experimental crawl datum") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "gait", "gait": {"mu": 10}}
  })",
                                  dir);
  CHECK(doc["paper_reference"]["measured_reference_mmps"] == 7.13);
  CHECK(doc["paper_reference"]["label"] == "experimental");
  CHECK(std::abs(doc["results"]["slip_analysis"]["delta_l_eff_mm"]
                     .get<double>() -
                 10.695) < 1e-9);
  CHECK(doc["results"]["cycle_period_s"] == 6.0);
}

TEST_CASE("calibrate scenario writes coefficients with tiny residuals") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "calibrate", "calibrate": {}}
  })",
                                  dir);
  for (const char* key :
       {"surge_rel", "heave_rel", "turn_speed_rel", "turn_diameter_rel"})
    CHECK(doc["results"]["residuals"][key].get<double>() < 1e-10);
  CHECK(fs::exists(dir.path / "table.csv"));
}

TEST_CASE("trajectory files: format, shape, and precondition") {
  Trajectory traj;
  traj.labels = {"xi_m", "alpha_rad"};
  for (int i = 0; i < 3; ++i) {
    traj.times.push_back(0.5 * i);
    traj.states.push_back({1.0 * i, 0.25 * i});
  }
  TempDir dir;
  const fs::path path = dir.path / "traj.csv";
  write_trajectory(traj, path);

  const std::string text = slurp(path);
  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t_s,xi_m,alpha_rad,alpha_deg");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);  // header + 3 samples total

  // full-precision values round-trip
  CHECK(text.find("5.0000000000000000e-01") != std::string::npos);

  const Trajectory empty;
  CHECK_THROWS_AS(write_trajectory(empty, dir.path / "empty.csv"), SimError);
}

TEST_CASE("identical scenarios produce byte-identical artifacts") {
  const std::string config_text = R"({
    "scenario": {"type": "maneuver",
                 "maneuver": {"model": "turn",
                              "command": {"F_L": 10, "F_R": -5},
                              "duration": 20}}
  })";
  TempDir a, b;
  const ScenarioConfig cfg = parse_config(config_text);
  RunOptions opt_a, opt_b;
  opt_a.output_dir_override = a.path.string();
  opt_b.output_dir_override = b.path.string();
  run_scenario(cfg, opt_a);
  run_scenario(cfg, opt_b);
  CHECK(slurp(a.path / "trajectory.csv") == slurp(b.path / "trajectory.csv"));
  CHECK(slurp(a.path / "summary.json") == slurp(b.path / "summary.json"));
}

TEST_CASE("existing outputs are not clobbered without consent") {
  const std::string config_text = R"({
    "scenario": {"type": "gait", "gait": {"catalog": true}}
  })";
  TempDir dir;
  const ScenarioConfig cfg = parse_config(config_text);
  RunOptions opt;
  opt.output_dir_override = dir.path.string();
  run_scenario(cfg, opt);
  CHECK_THROWS_AS(run_scenario(cfg, opt), ConfigError);
  opt.overwrite = true;
  CHECK_NOTHROW(run_scenario(cfg, opt));
}

TEST_CASE("sweep scenario writes the grid with sentinel columns") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "sweep",
                 "sweep": {"kind": "turn_map", "grid_n": 11}}
  })",
                                  dir);
  CHECK(doc["results"]["cells"] == 121);
  // the full F_L = F_R diagonal minus the origin, which the spin rule claims
  CHECK(doc["results"]["infinite_region_cells"].get<int>() == 10);
  CHECK(doc["results"]["infinitesimal_region_cells"].get<int>() == 11);
  const std::string table = slurp(dir.path / "table.csv");
  CHECK(table.find("infinite_region") != std::string::npos);
  CHECK(table.find("infinitesimal_region") != std::string::npos);
}

TEST_CASE("steady scenario reports solver outputs for the command") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "steady",
                 "steady": {"command": {"F_L": 10, "F_R": -5}}}
  })",
                                  dir);
  CHECK(std::abs(doc["results"]["turn"]["diameter_m"].get<double>() - 1.733) <
        1e-9);
  CHECK(doc["results"]["turn"]["turn_sense"] == "right");
}

TEST_CASE("added-mass scenario emits the six coefficients") {
  TempDir dir;
  const json doc = run_to_summary(R"({
    "scenario": {"type": "added_mass",
                 "added_mass": {"semi_major_a": 0.670,
                                "semi_minor_b": 0.0525}}
  })",
                                  dir);
  CHECK(std::abs(doc["results"]["lambda11_kg"].get<double>() - 0.108945) <
        1e-5);
  CHECK(doc["results"]["lambda44_kgm2"] == 0.0);
}
