#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wormsim/config.hpp"
#include "wormsim/integrate.hpp"

namespace wormsim {

struct RunOptions {
  // replaces the config's output directory when non-empty
  std::string output_dir_override;
  // existing output files are an error unless this is set
  bool overwrite = false;
};

struct ScenarioArtifacts {
  std::vector<std::filesystem::path> files;
  std::string summary_json;  // the summary document, as written to disk
};

/// Execute one scenario: dispatch on the scenario type, write the trajectory
/// and/or table files plus the summary document, and return what was written.
/// Solver failures propagate as SimError, bad output paths as ConfigError.
ScenarioArtifacts run_scenario(const ScenarioConfig& config,
                               const RunOptions& options = {});

/// Comma-delimited trajectory with unit-suffixed headers; angle columns in
/// radians get a duplicated degree column. Full precision (17 significant
/// digits), byte-identical output for identical inputs.
void write_trajectory(const Trajectory& traj,
                      const std::filesystem::path& path,
                      bool overwrite = false);

/// Write an already-structured summary document (JSON text) to disk.
void emit_summary(const std::string& summary_json,
                  const std::filesystem::path& path, bool overwrite = false);

}  // namespace wormsim
