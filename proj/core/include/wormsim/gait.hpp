#pragma once

#include <string>
#include <vector>

namespace wormsim {

/// Peristaltic gait tuple: N segments, k driving modules, each module n_A
/// anchoring + n_R relaxing/contracting segments, axial stroke delta_l per
/// segment, delta_t per actuation, mu whole wave cycles.
struct GaitSpec {
  int n_segments = 6;   // N
  int k_modules = 1;    // k
  int n_anchor = 1;     // n_A
  int n_relax = 1;      // n_R
  double delta_l = 0.02773;  // m
  double delta_t = 1.0;      // s
  int mu_cycles = 1;         // mu

  /// Steps per wave cycle, N / n_R (valid gaits only).
  int steps_per_cycle() const { return n_segments / n_relax; }
};

/// All invariant violations (empty means admissible): N >= 2, k >= 1,
/// n_A >= 1, n_R >= 1, k (n_A + n_R) <= N, n_R | N, positive strokes and
/// timing, mu >= 1, and k | N for multi-module gaits.
std::vector<std::string> validate_gait(const GaitSpec& spec);

/// Closed-form average crawl speed
///   [N - k (n_A + n_R)] / (N / n_R) * delta_l / delta_t.
/// Throws SimError(invalid_gait) for inadmissible specs.
double average_speed(const GaitSpec& spec);

/// Per-segment role within one step of the wave.
enum class SegmentPhase { anchored, contracting, relaxing, idle };

const char* to_string(SegmentPhase phase);

/// Module layout at a step: module j anchors the n_A segments starting at
/// (j N/k + s n_R) mod N, the n_R segments behind them are the
/// contracting/relaxing block, everything else is idle. Periodic in s with
/// period N / n_R.
std::vector<SegmentPhase> wave_state(const GaitSpec& spec, long step_index);

/// Discrete-event gait history sampled at step boundaries. Segment index 0
/// is the head segment; boundary_positions runs head to tail (N + 1 values).
struct GaitTrajectory {
  std::vector<double> step_times;  // s, step boundaries (steps + 1 values)
  std::vector<std::vector<double>> segment_lengths;     // per boundary
  std::vector<std::vector<double>> boundary_positions;  // per boundary
  std::vector<double> head_position;                    // per boundary
  std::vector<std::vector<SegmentPhase>> phases;        // per step

  double total_displacement() const {
    return head_position.empty() ? 0.0
                                 : head_position.back() - head_position.front();
  }
  double elapsed_time() const {
    return step_times.empty() ? 0.0 : step_times.back() - step_times.front();
  }
  double average_speed() const {
    const double t = elapsed_time();
    return t > 0.0 ? total_displacement() / t : 0.0;
  }
};

/// Event simulation over mu (N / n_R) steps. Anchored segments keep their
/// anchor points (tail boundaries) fixed within a step; contracting segments
/// drop to l_min; segments leaving the wave re-extend to l_min + delta_l.
/// Runs on an exact integer lattice, so the terminal displacement equals
/// mu [N - k (n_A + n_R)] delta_l exactly. Throws SimError(invalid_gait) for
/// inadmissible specs and SimError(internal) if the anchoring constraints
/// ever become inconsistent (unreachable for admissible gaits).
GaitTrajectory simulate_gait(const GaitSpec& spec, double l_min = 0.080);

/// Effective per-segment stroke implied by a measured average speed, and the
/// slip ratio relative to the gait's nominal stroke.
struct StrokeEstimate {
  double delta_l_eff = 0.0;  // m
  double slip_ratio = 0.0;   // 1 - delta_l_eff / delta_l
};

/// Inversion of the closed form over a measured speed. Throws
/// SimError(undefined_inversion) for gaits with zero nominal displacement.
StrokeEstimate effective_stroke_from_measurement(const GaitSpec& spec,
                                                 double measured_speed);

/// The six one-module reference gaits for a six-segment robot.
struct GaitCatalogRow {
  int gait_no = 0;
  GaitSpec spec;
  double speed_mps = 0.0;
};

std::vector<GaitCatalogRow> gait_catalog(double delta_l, double delta_t);

}  // namespace wormsim
