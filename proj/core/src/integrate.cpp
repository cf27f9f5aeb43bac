#include "wormsim/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wormsim/errors.hpp"

namespace wormsim {

namespace {

// Dormand-Prince 5(4) tableau (FSAL, 7 stages).
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// y5 - y4 weights
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                 e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// dense-output extra weights (Hairer's continuous extension)
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinShrink = 0.2;
constexpr double kMaxGrow = 10.0;
// PI controller exponents for a 4th-order error estimate
constexpr double kAlpha = 0.7 / 5.0;
constexpr double kBeta = 0.4 / 5.0;

using Vec = std::vector<double>;

void eval(const DerivativeFn& f, double t, const Vec& y, Vec& dydt) {
  f(t, y, dydt);
  for (double v : dydt) {
    if (!std::isfinite(v))
      throw IntegrationError(ErrorCode::nonfinite_derivative,
                             "derivative is not finite", t, y);
  }
}

struct DopriStep {
  Vec y5;          // accepted 5th-order solution
  Vec k1, k2, k3, k4, k5, k6, k7;
  double error_norm = 0.0;
};

// One raw Dormand-Prince step; k1 may be supplied (FSAL reuse).
DopriStep dopri_step(const DerivativeFn& f, double t, const Vec& y, double h,
                     const IntegratorConfig& cfg, const Vec* k1_in) {
  const std::size_t n = y.size();
  DopriStep s;
  s.k1.resize(n);
  if (k1_in)
    s.k1 = *k1_in;
  else
    eval(f, t, y, s.k1);

  Vec tmp(n);
  auto stage = [&](double c, auto&& combine, Vec& k) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * combine(i);
    k.resize(n);
    eval(f, t + c * h, tmp, k);
  };

  stage(c2, [&](std::size_t i) { return a21 * s.k1[i]; }, s.k2);
  stage(c3, [&](std::size_t i) { return a31 * s.k1[i] + a32 * s.k2[i]; },
        s.k3);
  stage(c4,
        [&](std::size_t i) {
          return a41 * s.k1[i] + a42 * s.k2[i] + a43 * s.k3[i];
        },
        s.k4);
  stage(c5,
        [&](std::size_t i) {
          return a51 * s.k1[i] + a52 * s.k2[i] + a53 * s.k3[i] +
                 a54 * s.k4[i];
        },
        s.k5);
  stage(1.0,
        [&](std::size_t i) {
          return a61 * s.k1[i] + a62 * s.k2[i] + a63 * s.k3[i] +
                 a64 * s.k4[i] + a65 * s.k5[i];
        },
        s.k6);

  s.y5.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    s.y5[i] = y[i] + h * (b1 * s.k1[i] + b3 * s.k3[i] + b4 * s.k4[i] +
                          b5 * s.k5[i] + b6 * s.k6[i]);
  s.k7.resize(n);
  eval(f, t + h, s.y5, s.k7);

  double err_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double err_i =
        h * (e1 * s.k1[i] + e3 * s.k3[i] + e4 * s.k4[i] + e5 * s.k5[i] +
             e6 * s.k6[i] + e7 * s.k7[i]);
    const double scale =
        cfg.abs_tol +
        cfg.rel_tol * std::max(std::abs(y[i]), std::abs(s.y5[i]));
    err_sq += (err_i / scale) * (err_i / scale);
  }
  s.error_norm = std::sqrt(err_sq / static_cast<double>(n));
  return s;
}

double suggest_step(double h, double err, double prev_err, double h_min,
                    double h_max) {
  double factor;
  if (err == 0.0) {
    factor = kMaxGrow;
  } else {
    factor = kSafety * std::pow(err, -kAlpha) * std::pow(prev_err, kBeta);
    factor = std::clamp(factor, kMinShrink, kMaxGrow);
  }
  return std::clamp(h * factor, h_min, h_max);
}

// Quartic interpolant over one accepted step, theta in [0, 1].
void dense_eval(const Vec& y_old, const DopriStep& s, double h, double theta,
                Vec& out) {
  const std::size_t n = y_old.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ydiff = s.y5[i] - y_old[i];
    const double bspl = h * s.k1[i] - ydiff;
    const double r1 = y_old[i];
    const double r2 = ydiff;
    const double r3 = bspl;
    const double r4 = ydiff - h * s.k7[i] - bspl;
    const double r5 = h * (d1 * s.k1[i] + d3 * s.k3[i] + d4 * s.k4[i] +
                           d5 * s.k5[i] + d6 * s.k6[i] + d7 * s.k7[i]);
    const double t1 = 1.0 - theta;
    out[i] = r1 + theta * (r2 + t1 * (r3 + theta * (r4 + t1 * r5)));
  }
}

void rk4_step(const DerivativeFn& f, double t, const Vec& y, double h,
              Vec& out) {
  const std::size_t n = y.size();
  Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
  eval(f, t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  eval(f, t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  eval(f, t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  eval(f, t + h, tmp, k4);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void check_finite(const Vec& y, double t) {
  for (double v : y) {
    if (!std::isfinite(v))
      throw IntegrationError(ErrorCode::divergence, "state diverged", t, y);
  }
}

}  // namespace

std::vector<std::string> IntegratorConfig::violations() const {
  std::vector<std::string> out;
  if (!(rel_tol > 0.0)) out.push_back("rel_tol must be > 0");
  if (!(abs_tol > 0.0)) out.push_back("abs_tol must be > 0");
  if (!(h_min > 0.0)) out.push_back("h_min must be > 0");
  if (!(h_min <= h_init)) out.push_back("h_min must be <= h_init");
  if (!(h_init <= h_max)) out.push_back("h_init must be <= h_max");
  if (!(output_dt > 0.0)) out.push_back("output_dt must be > 0");
  return out;
}

void IntegratorConfig::validate() const {
  auto v = violations();
  if (!v.empty())
    throw SimError(ErrorCode::invalid_coefficient, v.front());
}

std::vector<double> Trajectory::component(std::size_t index) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.at(index));
  return out;
}

StepResult step_adaptive54(const DerivativeFn& f, double t,
                           std::span<const double> y, double h,
                           const IntegratorConfig& config,
                           double previous_error_norm) {
  if (!(h > 0.0))
    throw SimError(ErrorCode::invalid_coefficient, "step size must be > 0");
  const Vec y0(y.begin(), y.end());
  DopriStep s = dopri_step(f, t, y0, h, config, nullptr);
  StepResult out;
  out.y = std::move(s.y5);
  out.error_norm = s.error_norm;
  out.h_next = suggest_step(h, s.error_norm, previous_error_norm,
                            config.h_min, config.h_max);
  return out;
}

Trajectory integrate(const DerivativeFn& f, std::span<const double> y0,
                     double t0, double t1, const IntegratorConfig& config) {
  config.validate();
  if (!(t1 > t0))
    throw SimError(ErrorCode::invalid_coefficient,
                   "integration span must have t1 > t0");

  // Uniform output grid with the last sample exactly at t1. The spacing is
  // the nearest divisor of the span to the requested output_dt.
  const double span = t1 - t0;
  const std::size_t n_out = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(span / config.output_dt)));
  const double dt_out = span / static_cast<double>(n_out);

  Trajectory traj;
  traj.times.reserve(n_out + 1);
  traj.states.reserve(n_out + 1);

  Vec y(y0.begin(), y0.end());
  check_finite(y, t0);
  traj.times.push_back(t0);
  traj.states.push_back(y);

  std::size_t next_sample = 1;  // index of the next grid point to emit
  Vec interp;

  if (config.method == Method::fixed_rk4) {
    // Fixed-step RK4 lands on every grid point exactly: h_init substeps are
    // taken inside each output interval.
    const std::size_t substeps = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(dt_out / config.h_init)));
    const double h = dt_out / static_cast<double>(substeps);
    for (; next_sample <= n_out; ++next_sample) {
      const double t_left = t0 + dt_out * static_cast<double>(next_sample - 1);
      Vec cur = y;
      for (std::size_t i = 0; i < substeps; ++i) {
        Vec next;
        rk4_step(f, t_left + h * static_cast<double>(i), cur, h, next);
        cur = std::move(next);
      }
      y = std::move(cur);
      const double t_right =
          (next_sample == n_out)
              ? t1
              : t0 + dt_out * static_cast<double>(next_sample);
      check_finite(y, t_right);
      traj.times.push_back(t_right);
      traj.states.push_back(y);
    }
    return traj;
  }

  // Adaptive Dormand-Prince with FSAL reuse and dense output.
  double t = t0;
  double h = std::clamp(config.h_init, config.h_min,
                        std::min(config.h_max, span));
  double prev_err = 1.0;
  Vec k1(y.size());
  eval(f, t, y, k1);
  bool have_k1 = true;

  while (t < t1) {
    if (h < config.h_min * (1.0 + 1e-12))
      h = config.h_min;
    const bool last = (t + h >= t1);
    const double h_try = last ? (t1 - t) : h;

    DopriStep s = dopri_step(f, t, y, h_try, config, have_k1 ? &k1 : nullptr);

    if (s.error_norm <= 1.0) {
      // accepted: emit every grid point inside (t, t + h_try]
      const double t_new = t + h_try;
      while (next_sample <= n_out) {
        const double ts = (next_sample == n_out)
                              ? t1
                              : t0 + dt_out * static_cast<double>(next_sample);
        if (ts > t_new + 1e-14 * std::max(1.0, std::abs(t_new))) break;
        const double theta = std::clamp((ts - t) / h_try, 0.0, 1.0);
        dense_eval(y, s, h_try, theta, interp);
        check_finite(interp, ts);
        traj.times.push_back(ts);
        traj.states.push_back(interp);
        ++next_sample;
      }
      y = s.y5;
      check_finite(y, t_new);
      k1 = s.k7;  // FSAL
      have_k1 = true;
      t = t_new;
      h = suggest_step(h_try, s.error_norm, prev_err, config.h_min,
                       config.h_max);
      prev_err = std::max(s.error_norm, 1e-12);
    } else {
      if (h_try <= config.h_min * (1.0 + 1e-12))
        throw IntegrationError(
            ErrorCode::step_underflow,
            "tolerance unreachable at minimum step size (stiff problem?)", t,
            y);
      h = std::max(config.h_min,
                   h_try * std::clamp(kSafety * std::pow(s.error_norm, -kAlpha),
                                      kMinShrink, 1.0));
      // k1 is still valid for a retry from the same point
    }
  }

  // Numerical edge: if accumulated rounding left the final grid point
  // unemitted, emit it from the final state.
  while (next_sample <= n_out) {
    traj.times.push_back(next_sample == n_out
                             ? t1
                             : t0 + dt_out * static_cast<double>(next_sample));
    traj.states.push_back(y);
    ++next_sample;
  }
  return traj;
}

std::optional<double> detect_steady(const Trajectory& traj,
                                    std::size_t component_index, double window,
                                    double tol) {
  if (traj.times.size() < 2) return std::nullopt;
  const double t_end = traj.times.back();
  const double t_start = t_end - window;
  if (t_start < traj.times.front() - 1e-12) return std::nullopt;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < t_start - 1e-12) continue;
    const double v = traj.states[i].at(component_index);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
    ++count;
  }
  if (count == 0) return std::nullopt;
  const double mean = sum / static_cast<double>(count);
  constexpr double abs_floor = 1e-9;
  if (hi - lo <= tol * std::max(std::abs(mean), abs_floor)) return mean;
  return std::nullopt;
}

}  // namespace wormsim
