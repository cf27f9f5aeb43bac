#pragma once

#include <optional>
#include <string>
#include <variant>

#include "wormsim/hydro.hpp"

namespace wormsim {

/// Locomotion modes. Expanding/Contracting are the transient states of the
/// lateral-propeller linkage between crawling (folded) and swimming.
enum class LocomotionMode { crawl, expanding, swim, contracting };

const char* to_string(LocomotionMode mode);

struct ModeState {
  LocomotionMode mode = LocomotionMode::crawl;

  // environment; in_pipe is operator-supplied (the vehicle has no sensor
  // for it)
  bool in_pipe = false;
  std::optional<double> pipe_inner_diameter;  // m

  // geometry
  double folded_span = 0.105;    // m, hull diameter with propellers folded
  double expanded_span = 0.145;  // m, lateral propeller axis span

  // linkage timing
  double transition_duration = 2.0;  // s
  double transition_elapsed = 0.0;   // s, accumulates across ticks

  bool propellers_expanded() const { return mode == LocomotionMode::swim; }
};

enum class RejectionReason { pipe_clearance, already_in_target, mid_transition };

const char* to_string(RejectionReason reason);

struct TransitionRejection {
  RejectionReason reason;
  std::string detail;
};

using TransitionOutcome = std::variant<ModeState, TransitionRejection>;

/// Request a mode change toward crawl or swim. Legal sequences are
/// crawl -> expanding -> swim and swim -> contracting -> crawl; expansion is
/// refused while inside a pipe the expanded span cannot clear. Transitions
/// are atomic per call.
TransitionOutcome request_transition(const ModeState& state,
                                     LocomotionMode target);

/// Advance the transition clock. Expanding completes to swim (and
/// contracting to crawl) once transition_duration has accumulated; settled
/// modes never change spontaneously.
ModeState tick(const ModeState& state, double dt);

/// Whether a thrust command is permitted in the current mode: lateral thrust
/// requires fully expanded propellers (swim), and crawling allows no
/// propeller thrust at all.
bool command_admissible(const ModeState& state, const ThrustCommand& cmd);

}  // namespace wormsim
