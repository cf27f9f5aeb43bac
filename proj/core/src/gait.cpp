#include "wormsim/gait.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "wormsim/errors.hpp"

namespace wormsim {

namespace {

void require_admissible(const GaitSpec& spec) {
  auto v = validate_gait(spec);
  if (v.empty()) return;
  std::ostringstream msg;
  for (std::size_t i = 0; i < v.size(); ++i) msg << (i ? "; " : "") << v[i];
  throw SimError(ErrorCode::invalid_gait, msg.str());
}

int displacement_steps(const GaitSpec& spec) {
  return spec.n_segments - spec.k_modules * (spec.n_anchor + spec.n_relax);
}

/// Exact position on the (l_min, delta_l) lattice: value = a l_min + b delta_l.
struct LatticePoint {
  std::int64_t a = 0;
  std::int64_t b = 0;
  bool operator==(const LatticePoint&) const = default;
  LatticePoint operator+(const LatticePoint& o) const {
    return {a + o.a, b + o.b};
  }
  LatticePoint operator-(const LatticePoint& o) const {
    return {a - o.a, b - o.b};
  }
  double value(double l_min, double delta_l) const {
    return static_cast<double>(a) * l_min + static_cast<double>(b) * delta_l;
  }
};

// segment length as lattice point: short = l_min, long = l_min + delta_l
LatticePoint seg_len(bool is_short) {
  return {1, is_short ? 0 : 1};
}

}  // namespace

const char* to_string(SegmentPhase phase) {
  switch (phase) {
    case SegmentPhase::anchored: return "anchored";
    case SegmentPhase::contracting: return "contracting";
    case SegmentPhase::relaxing: return "relaxing";
    case SegmentPhase::idle: return "idle";
  }
  return "unknown";
}

std::vector<std::string> validate_gait(const GaitSpec& spec) {
  std::vector<std::string> out;
  if (spec.n_segments < 2) out.push_back("N must be >= 2");
  if (spec.k_modules < 1) out.push_back("k must be >= 1");
  if (spec.n_anchor < 1) out.push_back("n_A must be >= 1");
  if (spec.n_relax < 1) out.push_back("n_R must be >= 1");
  if (spec.k_modules >= 1 && spec.n_anchor >= 1 && spec.n_relax >= 1 &&
      spec.k_modules * (spec.n_anchor + spec.n_relax) > spec.n_segments) {
    std::ostringstream msg;
    msg << "module capacity exceeded: k(n_A+n_R) = "
        << spec.k_modules * (spec.n_anchor + spec.n_relax) << " > N = "
        << spec.n_segments;
    out.push_back(msg.str());
  }
  if (spec.n_relax >= 1 && spec.n_segments >= 1 &&
      spec.n_segments % spec.n_relax != 0) {
    std::ostringstream msg;
    msg << "n_R = " << spec.n_relax << " does not divide N = "
        << spec.n_segments;
    out.push_back(msg.str());
  }
  if (spec.k_modules > 1 && spec.n_segments >= 1 &&
      spec.n_segments % spec.k_modules != 0) {
    std::ostringstream msg;
    msg << "k = " << spec.k_modules
        << " modules need even spacing: k must divide N = " << spec.n_segments;
    out.push_back(msg.str());
  }
  if (!(spec.delta_l > 0.0)) out.push_back("delta_l must be > 0");
  if (!(spec.delta_t > 0.0)) out.push_back("delta_t must be > 0");
  if (spec.mu_cycles < 1) out.push_back("mu_cycles must be >= 1");
  return out;
}

double average_speed(const GaitSpec& spec) {
  require_admissible(spec);
  // the cycle count mu cancels between displacement and elapsed time
  return static_cast<double>(displacement_steps(spec)) /
         static_cast<double>(spec.steps_per_cycle()) * spec.delta_l /
         spec.delta_t;
}

std::vector<SegmentPhase> wave_state(const GaitSpec& spec, long step_index) {
  require_admissible(spec);
  if (step_index < 0)
    throw SimError(ErrorCode::invalid_gait, "step index must be >= 0");

  const int N = spec.n_segments;
  std::vector<SegmentPhase> phases(static_cast<std::size_t>(N),
                                   SegmentPhase::idle);
  const long s = step_index % spec.steps_per_cycle();
  for (int j = 0; j < spec.k_modules; ++j) {
    const long offset =
        (static_cast<long>(j) * N / spec.k_modules + s * spec.n_relax) % N;
    for (int i = 0; i < spec.n_anchor; ++i)
      phases[static_cast<std::size_t>((offset + i) % N)] =
          SegmentPhase::anchored;
    for (int i = 0; i < spec.n_relax; ++i)
      phases[static_cast<std::size_t>((offset + spec.n_anchor + i) % N)] =
          SegmentPhase::contracting;
  }
  return phases;
}

GaitTrajectory simulate_gait(const GaitSpec& spec, double l_min) {
  require_admissible(spec);
  if (!(l_min > 0.0))
    throw SimError(ErrorCode::invalid_gait, "l_min must be > 0");

  const int N = spec.n_segments;
  const std::size_t n = static_cast<std::size_t>(N);
  const long total_steps =
      static_cast<long>(spec.mu_cycles) * spec.steps_per_cycle();

  // Wave layout per step: the anchored set and the contracting block.
  auto layout = [&](long step) {
    std::vector<bool> anchored(n, false), block(n, false);
    const long s = step % spec.steps_per_cycle();
    for (int j = 0; j < spec.k_modules; ++j) {
      const long offset =
          (static_cast<long>(j) * N / spec.k_modules + s * spec.n_relax) % N;
      for (int i = 0; i < spec.n_anchor; ++i)
        anchored[static_cast<std::size_t>((offset + i) % N)] = true;
      for (int i = 0; i < spec.n_relax; ++i)
        block[static_cast<std::size_t>((offset + spec.n_anchor + i) % N)] =
            true;
    }
    return std::pair(anchored, block);
  };

  // Start on the periodic orbit: the wave footprint of the step before step
  // 0 is contracted, everything else extended. This makes every cycle,
  // including the first, displace by exactly the same amount.
  std::vector<bool> is_short(n, false);
  {
    auto [anchored_prev, block_prev] = layout(spec.steps_per_cycle() - 1);
    for (std::size_t i = 0; i < n; ++i)
      is_short[i] = anchored_prev[i] || block_prev[i];
  }

  // Boundary positions on the exact lattice, head first. Head starts at 0.
  std::vector<LatticePoint> pos(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    pos[i + 1] = pos[i] - seg_len(is_short[i]);

  GaitTrajectory traj;
  const auto boundaries = static_cast<std::size_t>(total_steps) + 1;
  traj.step_times.reserve(boundaries);
  traj.segment_lengths.reserve(boundaries);
  traj.boundary_positions.reserve(boundaries);
  traj.head_position.reserve(boundaries);
  traj.phases.reserve(static_cast<std::size_t>(total_steps));

  auto record_boundary = [&](long step) {
    traj.step_times.push_back(static_cast<double>(step) * spec.delta_t);
    std::vector<double> lengths(n);
    for (std::size_t i = 0; i < n; ++i)
      lengths[i] = seg_len(is_short[i]).value(l_min, spec.delta_l);
    traj.segment_lengths.push_back(std::move(lengths));
    std::vector<double> bpos(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      bpos[i] = pos[i].value(l_min, spec.delta_l);
    traj.boundary_positions.push_back(std::move(bpos));
    traj.head_position.push_back(pos[0].value(l_min, spec.delta_l));
  };

  record_boundary(0);

  for (long step = 0; step < total_steps; ++step) {
    auto [anchored, block] = layout(step);

    long first_anchor = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (anchored[i]) {
        first_anchor = static_cast<long>(i);
        break;
      }
    }
    if (first_anchor < 0)
      throw SimError(ErrorCode::internal,
                     "no anchored segment; gait wave is inconsistent");
    for (std::size_t i = 0; i < n; ++i) {
      if (anchored[i] && !is_short[i])
        throw SimError(ErrorCode::internal,
                       "segment reached anchoring without being contracted");
    }

    // New length state: the wave footprint is contracted, everything that
    // left it re-extends, anchored lengths are untouched (they are inside
    // the footprint by construction).
    std::vector<bool> next_short(n);
    std::vector<SegmentPhase> phases(n, SegmentPhase::idle);
    for (std::size_t i = 0; i < n; ++i) {
      next_short[i] = anchored[i] || block[i];
      if (anchored[i])
        phases[i] = SegmentPhase::anchored;
      else if (block[i])
        phases[i] = SegmentPhase::contracting;
      else if (is_short[i])
        phases[i] = SegmentPhase::relaxing;  // leaving the wave, re-extending
    }

    // Recompute boundaries holding the first anchor's tail boundary, then
    // verify every other anchored segment kept its anchor point. On the
    // integer lattice this check is exact.
    const std::size_t fa = static_cast<std::size_t>(first_anchor);
    std::vector<LatticePoint> next_pos(n + 1);
    next_pos[fa + 1] = pos[fa + 1];
    for (std::size_t i = fa + 1; i-- > 0;)
      next_pos[i] = next_pos[i + 1] + seg_len(next_short[i]);
    for (std::size_t i = fa + 1; i < n; ++i)
      next_pos[i + 1] = next_pos[i] - seg_len(next_short[i]);

    for (std::size_t i = 0; i < n; ++i) {
      if (anchored[i] && !(next_pos[i + 1] == pos[i + 1]))
        throw SimError(ErrorCode::internal,
                       "anchored segment would slip; wave events are "
                       "inconsistent with the anchoring pattern");
    }

    pos = std::move(next_pos);
    is_short = std::move(next_short);
    traj.phases.push_back(std::move(phases));
    record_boundary(step + 1);
  }

  return traj;
}

StrokeEstimate effective_stroke_from_measurement(const GaitSpec& spec,
                                                 double measured_speed) {
  require_admissible(spec);
  const int disp = displacement_steps(spec);
  if (disp <= 0)
    throw SimError(ErrorCode::undefined_inversion,
                   "gait has zero nominal displacement; stroke cannot be "
                   "inferred from speed");
  StrokeEstimate est;
  est.delta_l_eff = measured_speed *
                    static_cast<double>(spec.steps_per_cycle()) *
                    spec.delta_t / static_cast<double>(disp);
  est.slip_ratio = 1.0 - est.delta_l_eff / spec.delta_l;
  return est;
}

std::vector<GaitCatalogRow> gait_catalog(double delta_l, double delta_t) {
  if (!(delta_l > 0.0) || !(delta_t > 0.0))
    throw SimError(ErrorCode::invalid_gait,
                   "catalog needs positive delta_l and delta_t");
  // the published six-segment single-module gait table
  constexpr int kTable[6][2] = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {1, 2}, {2, 2}};
  std::vector<GaitCatalogRow> rows;
  rows.reserve(6);
  for (int g = 0; g < 6; ++g) {
    GaitCatalogRow row;
    row.gait_no = g + 1;
    row.spec.n_segments = 6;
    row.spec.k_modules = 1;
    row.spec.n_anchor = kTable[g][0];
    row.spec.n_relax = kTable[g][1];
    row.spec.delta_l = delta_l;
    row.spec.delta_t = delta_t;
    row.speed_mps = average_speed(row.spec);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wormsim
