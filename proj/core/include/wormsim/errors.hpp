#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wormsim {

/// Failure categories raised by the model and solver layers. The CLI maps
/// everything here onto exit code 3 (numeric/solver error); configuration
/// problems use ConfigError instead and map onto exit code 2.
enum class ErrorCode {
  invalid_geometry,
  invalid_coefficient,
  invalid_command,
  no_steady_state,
  inconsistent_targets,
  invalid_target,
  no_circle,
  invalid_gait,
  undefined_inversion,
  nonfinite_derivative,
  step_underflow,
  divergence,
  internal,
  io,
};

const char* to_string(ErrorCode code);

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Integration failures additionally carry the time and state at which
/// stepping broke down so callers can report or restart.
class IntegrationError : public SimError {
 public:
  IntegrationError(ErrorCode code, const std::string& message, double t,
                   std::vector<double> state)
      : SimError(code, message + " at t=" + std::to_string(t)),
        t_(t),
        state_(std::move(state)) {}

  double failure_time() const noexcept { return t_; }
  const std::vector<double>& failure_state() const noexcept { return state_; }

 private:
  double t_;
  std::vector<double> state_;
};

}  // namespace wormsim
