#include "wormsim/mode.hpp"

#include <sstream>

#include "wormsim/errors.hpp"

namespace wormsim {

const char* to_string(LocomotionMode mode) {
  switch (mode) {
    case LocomotionMode::crawl: return "crawl";
    case LocomotionMode::expanding: return "expanding";
    case LocomotionMode::swim: return "swim";
    case LocomotionMode::contracting: return "contracting";
  }
  return "unknown";
}

const char* to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::pipe_clearance: return "pipe-clearance";
    case RejectionReason::already_in_target: return "already-in-target";
    case RejectionReason::mid_transition: return "mid-transition";
  }
  return "unknown";
}

TransitionOutcome request_transition(const ModeState& state,
                                     LocomotionMode target) {
  if (target != LocomotionMode::crawl && target != LocomotionMode::swim)
    throw SimError(ErrorCode::invalid_command,
                   "transition targets are crawl or swim");

  if (state.mode == target)
    return TransitionRejection{RejectionReason::already_in_target,
                               std::string("already in ") + to_string(target)};
  if (state.mode == LocomotionMode::expanding ||
      state.mode == LocomotionMode::contracting)
    return TransitionRejection{
        RejectionReason::mid_transition,
        std::string("cannot retarget while ") + to_string(state.mode)};

  ModeState next = state;
  next.transition_elapsed = 0.0;

  if (target == LocomotionMode::swim) {
    // geometric guard: never start expanding inside a pipe the expanded
    // span cannot clear (unknown pipe bore counts as no clearance)
    if (state.in_pipe) {
      const bool clears = state.pipe_inner_diameter.has_value() &&
                          state.expanded_span <= *state.pipe_inner_diameter;
      if (!clears) {
        std::ostringstream msg;
        msg << "expanded span " << state.expanded_span << " m does not clear ";
        if (state.pipe_inner_diameter)
          msg << "pipe bore " << *state.pipe_inner_diameter << " m";
        else
          msg << "a pipe of unknown bore";
        return TransitionRejection{RejectionReason::pipe_clearance, msg.str()};
      }
    }
    next.mode = LocomotionMode::expanding;
  } else {
    next.mode = LocomotionMode::contracting;
  }
  return next;
}

ModeState tick(const ModeState& state, double dt) {
  if (!(dt > 0.0))
    throw SimError(ErrorCode::invalid_command, "tick needs dt > 0");
  ModeState next = state;
  if (state.mode == LocomotionMode::expanding ||
      state.mode == LocomotionMode::contracting) {
    next.transition_elapsed += dt;
    if (next.transition_elapsed >= state.transition_duration) {
      next.mode = state.mode == LocomotionMode::expanding
                      ? LocomotionMode::swim
                      : LocomotionMode::crawl;
      next.transition_elapsed = 0.0;
    }
  }
  return next;
}

bool command_admissible(const ModeState& state, const ThrustCommand& cmd) {
  if (!cmd.violations().empty()) return false;
  switch (state.mode) {
    case LocomotionMode::swim:
      // swimming commands must reflect the expanded linkage
      return cmd.propellers_expanded;
    case LocomotionMode::crawl:
      return cmd.F_L == 0.0 && cmd.F_R == 0.0 && !cmd.propellers_expanded;
    case LocomotionMode::expanding:
    case LocomotionMode::contracting:
      // linkage in motion: lateral thrust is unavailable
      return cmd.F_L == 0.0 && cmd.F_R == 0.0 && !cmd.propellers_expanded;
  }
  return false;
}

}  // namespace wormsim
