#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wormsim {

/// Right-hand side f(t, y) -> dydt, written into the provided span.
using DerivativeFn =
    std::function<void(double t, std::span<const double> y,
                       std::span<double> dydt)>;

enum class Method { adaptive54, fixed_rk4 };

struct IntegratorConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  double h_init = 1e-3;   // s
  double h_min = 1e-10;   // s
  double h_max = 0.1;     // s
  Method method = Method::adaptive54;
  double output_dt = 0.01;  // s, target dense-output spacing

  std::vector<std::string> violations() const;
  void validate() const;
};

/// Uniformly sampled result of one integration. Sample times are strictly
/// increasing with constant spacing (the last sample is exactly the requested
/// end time). Metadata identifies the state layout and the inputs used.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;  // one state vector per sample
  std::vector<std::string> labels;
  std::string command_note;
  std::uint64_t params_fingerprint = 0;

  std::size_t size() const { return times.size(); }
  double duration() const {
    return times.empty() ? 0.0 : times.back() - times.front();
  }
  /// Column extraction for one state component.
  std::vector<double> component(std::size_t index) const;
};

/// One embedded Dormand-Prince 5(4) step.
struct StepResult {
  std::vector<double> y;    // fifth-order solution at t + h
  double error_norm;        // weighted embedded error estimate (<= 1 accepts)
  double h_next;            // controller suggestion, within [h_min, h_max]
};

/// Single trial step from (t, y) with size h. Throws IntegrationError with
/// the failing time and state if the derivative is non-finite. The optional
/// previous error feeds the PI controller; by default the step behaves like
/// a plain I-controller.
StepResult step_adaptive54(const DerivativeFn& f, double t,
                           std::span<const double> y, double h,
                           const IntegratorConfig& config = {},
                           double previous_error_norm = 1.0);

/// Integrate over [t0, t1] and sample onto the uniform output grid using the
/// method's interpolant (output spacing never affects the step sequence).
/// Deterministic: identical inputs give bit-identical trajectories.
/// Throws IntegrationError on step underflow or non-finite states.
Trajectory integrate(const DerivativeFn& f, std::span<const double> y0,
                     double t0, double t1, const IntegratorConfig& config = {});

/// Trailing-window steady-state check on one component: returns the window
/// mean when (max - min) <= tol * max(|mean|, 1e-9), otherwise nullopt.
std::optional<double> detect_steady(const Trajectory& traj,
                                    std::size_t component_index, double window,
                                    double tol);

}  // namespace wormsim
