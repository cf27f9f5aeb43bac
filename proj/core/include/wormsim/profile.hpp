#pragma once

#include <map>
#include <string>

#include "wormsim/hydro.hpp"

namespace wormsim {

/// Where a coefficient value came from; every scenario summary reports this
/// per field so nothing looks more measured than it is.
enum class Provenance {
  user_supplied,
  calibrated,
  spheroid_derived,
  builtin_default,
};

const char* to_string(Provenance p);

struct RobotProfile {
  HydroParams params;
  std::map<std::string, Provenance> provenance;  // field name -> origin

  void set(const std::string& field, Provenance p) { provenance[field] = p; }
};

/// Default vehicle profile: published mass and inertia, added mass from the
/// spheroid envelope (half length 0.670 m, half diameter 0.0525 m, fresh
/// water), damping from the steady-state calibration, lateral arms from half
/// the propeller axis span. The vertical arms have no published value and
/// carry a placeholder that no calibrated result depends on.
RobotProfile reference_profile();

}  // namespace wormsim
