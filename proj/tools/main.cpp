// Scenario driver: each subcommand runs one configuration file and writes
// its artifacts (trajectory/table CSV plus a JSON summary).

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wormsim/config.hpp"
#include "wormsim/errors.hpp"
#include "wormsim/profile.hpp"
#include "wormsim/scenario.hpp"

namespace {

constexpr const char* kVersion = "0.3.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw wormsim::ConfigError(wormsim::ConfigError::Kind::parse, path,
                               "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SubcommandSpec {
  const char* name;
  const char* description;
  wormsim::ScenarioType type;
};

constexpr SubcommandSpec kSubcommands[] = {
    {"simulate", "Integrate a maneuver scenario and write its trajectory",
     wormsim::ScenarioType::maneuver},
    {"steady", "Evaluate the steady-state solvers for a thrust command",
     wormsim::ScenarioType::steady},
    {"sweep", "Run a thrust/velocity or turn-map sweep",
     wormsim::ScenarioType::sweep},
    {"gait", "Simulate an in-pipe gait or emit the gait catalog",
     wormsim::ScenarioType::gait},
    {"calibrate", "Reconstruct damping coefficients from steady targets",
     wormsim::ScenarioType::calibrate},
    {"added-mass", "Evaluate spheroid added mass for a hull envelope",
     wormsim::ScenarioType::added_mass},
};

int run(const std::string& config_path, const std::string& out_dir,
        bool force, wormsim::ScenarioType expected) {
  const wormsim::ScenarioConfig cfg =
      wormsim::parse_config(read_file(config_path));
  if (cfg.type != expected) {
    std::cerr << "error: config declares scenario type \""
              << wormsim::to_string(cfg.type)
              << "\" but this subcommand runs \""
              << wormsim::to_string(expected) << "\"\n";
    return kExitConfig;
  }
  wormsim::RunOptions options;
  options.output_dir_override = out_dir;
  options.overwrite = force;
  const wormsim::ScenarioArtifacts artifacts =
      wormsim::run_scenario(cfg, options);
  for (const auto& file : artifacts.files)
    std::cout << "wrote " << file.string() << "\n";
  return kExitOk;
}

void print_version() {
  const wormsim::RobotProfile profile = wormsim::reference_profile();
  char fp[20];
  std::snprintf(fp, sizeof fp, "%016" PRIx64,
                wormsim::fingerprint(profile.params));
  std::cout << "wormsim " << kVersion << " (default profile " << fp << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and analysis toolkit for a multi-mode underwater crawling "
      "and swimming robot"};
  app.require_subcommand(0, 1);

  bool show_version = false;
  app.add_flag("--version", show_version,
               "Print the tool version and default-profile fingerprint");

  struct Args {
    std::string config;
    std::string out_dir;
    bool force = false;
  };
  std::map<std::string, Args> args;

  for (const auto& sub : kSubcommands) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.description);
    Args& a = args[sub.name];
    cmd->add_option("config", a.config, "Scenario configuration file (JSON)")
        ->required();
    cmd->add_option("-o,--output-dir", a.out_dir,
                    "Override the config's output directory");
    cmd->add_flag("--force", a.force, "Replace existing output files");
  }

  CLI11_PARSE(app, argc, argv);

  if (show_version) {
    print_version();
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return kExitOk;
  }

  try {
    for (const auto& sub : kSubcommands) {
      if (app.got_subcommand(sub.name)) {
        const Args& a = args[sub.name];
        return run(a.config, a.out_dir, a.force, sub.type);
      }
    }
  } catch (const wormsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wormsim::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
