#include "wormsim/hydro.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "wormsim/errors.hpp"

namespace wormsim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_geometry: return "invalid-geometry";
    case ErrorCode::invalid_coefficient: return "invalid-coefficient";
    case ErrorCode::invalid_command: return "invalid-command";
    case ErrorCode::no_steady_state: return "no-forward-steady-state";
    case ErrorCode::inconsistent_targets: return "inconsistent-targets";
    case ErrorCode::invalid_target: return "invalid-target";
    case ErrorCode::no_circle: return "no-circle";
    case ErrorCode::invalid_gait: return "invalid-gait";
    case ErrorCode::undefined_inversion: return "undefined-inversion";
    case ErrorCode::nonfinite_derivative: return "non-finite-derivative";
    case ErrorCode::step_underflow: return "step-underflow";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::internal: return "internal";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

namespace {

void require_nonneg(std::vector<std::string>& out, const char* name, double v) {
  if (!(v >= 0.0)) out.push_back(std::string(name) + " must be >= 0");
}

void require_pos(std::vector<std::string>& out, const char* name, double v) {
  if (!(v > 0.0)) out.push_back(std::string(name) + " must be > 0");
}

}  // namespace

std::vector<std::string> HydroParams::violations() const {
  std::vector<std::string> out;
  require_pos(out, "mass", mass);
  require_pos(out, "Jx", Jx);
  require_pos(out, "Jy", Jy);
  require_pos(out, "Jz", Jz);
  require_nonneg(out, "lambda11", lambda11);
  require_nonneg(out, "lambda22", lambda22);
  require_nonneg(out, "lambda33", lambda33);
  require_nonneg(out, "lambda44", lambda44);
  require_nonneg(out, "lambda55", lambda55);
  require_nonneg(out, "lambda66", lambda66);
  const struct { const char* name; double v; } damping[] = {
      {"X_uu", X_uu},       {"X_vv", X_vv},       {"X_rr", X_rr},
      {"X_vr", X_vr},       {"Y_v", Y_v},         {"Y_r", Y_r},
      {"Y_vabsv", Y_vabsv}, {"Y_rabsr", Y_rabsr}, {"Y_vabsr", Y_vabsr},
      {"N_v", N_v},         {"N_r", N_r},         {"N_vabsv", N_vabsv},
      {"N_rabsr", N_rabsr}, {"N_vabsr", N_vabsr}, {"Z_w", Z_w},
      {"Z_absw", Z_absw},   {"Z_q", Z_q},         {"Z_wabsw", Z_wabsw},
      {"Z_ww", Z_ww},       {"Z_wabsq", Z_wabsq}, {"Z_qabsq", Z_qabsq},
      {"M_w", M_w},         {"M_absw", M_absw},   {"M_q", M_q},
      {"M_wabsw", M_wabsw}, {"M_ww", M_ww},       {"M_wabsq", M_wabsq},
      {"M_qabsq", M_qabsq},
  };
  for (const auto& d : damping) require_nonneg(out, d.name, d.v);
  require_nonneg(out, "L_L", L_L);
  require_nonneg(out, "L_R", L_R);
  require_nonneg(out, "L_F", L_F);
  require_nonneg(out, "L_B", L_B);
  return out;
}

void HydroParams::validate() const {
  auto v = violations();
  if (v.empty()) return;
  std::ostringstream msg;
  for (std::size_t i = 0; i < v.size(); ++i)
    msg << (i ? "; " : "") << v[i];
  throw SimError(ErrorCode::invalid_coefficient, msg.str());
}

std::uint64_t fingerprint(const HydroParams& p) {
  const double fields[] = {
      p.mass,     p.Jx,       p.Jy,       p.Jz,       p.lambda11, p.lambda22,
      p.lambda33, p.lambda44, p.lambda55, p.lambda66, p.X_uu,     p.X_vv,
      p.X_rr,     p.X_vr,     p.Y_v,      p.Y_r,      p.Y_vabsv,  p.Y_rabsr,
      p.Y_vabsr,  p.N_v,      p.N_r,      p.N_vabsv,  p.N_rabsr,  p.N_vabsr,
      p.Z_w,      p.Z_absw,   p.Z_q,      p.Z_wabsw,  p.Z_ww,     p.Z_wabsq,
      p.Z_qabsq,  p.M_w,      p.M_absw,   p.M_q,      p.M_wabsw,  p.M_ww,
      p.M_wabsq,  p.M_qabsq,  p.L_L,      p.L_R,      p.L_F,      p.L_B,
  };
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (double f : fields) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof f);
    std::memcpy(&bits, &f, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::vector<std::string> ThrustCommand::violations() const {
  std::vector<std::string> out;
  if (!propellers_expanded && (F_L != 0.0 || F_R != 0.0))
    out.push_back("lateral propellers cannot thrust while folded");
  if (!std::isfinite(F_L) || !std::isfinite(F_R) || !std::isfinite(F_F) ||
      !std::isfinite(F_B))
    out.push_back("forces must be finite");
  return out;
}

void ThrustCommand::validate() const {
  auto v = violations();
  if (v.empty()) return;
  throw SimError(ErrorCode::invalid_command, v.front());
}

// -- spheroid added mass -------------------------------------------------------

SpheroidAddedMass spheroid_added_mass(const SpheroidGeometry& geom) {
  const double a = geom.semi_major_a;
  const double b = geom.semi_minor_b;
  const double rho = geom.fluid_density_rho;
  if (!(a > 0.0) || !(b > 0.0) || !(rho > 0.0))
    throw SimError(ErrorCode::invalid_geometry,
                   "spheroid axes and fluid density must be positive");
  if (a < b)
    throw SimError(ErrorCode::invalid_geometry,
                   "semi-major axis must satisfy a >= b");

  SpheroidAddedMass out;
  out.displaced_fluid_mass = 4.0 / 3.0 * std::numbers::pi * rho * a * b * b;

  if (a == b) {
    // analytic sphere limit; the e -> 0 formulas are 0/0 here
    out.k1 = 0.5;
    out.k2 = 0.5;
    out.k_prime = 0.0;
  } else {
    const double ratio = b / a;
    const double e2 = (1.0 - ratio) * (1.0 + ratio);  // 1 - (b/a)^2, exact-ish
    const double e = std::sqrt(e2);
    const double one_m_e2 = ratio * ratio;
    // halfL = (1/2) ln((1+e)/(1-e)), evaluated via log1p so the slender and
    // near-sphere ends both stay accurate
    const double halfL = std::log1p(e) - 0.5 * std::log1p(-e2);
    const double e3 = e2 * e;
    const double alpha0 = 2.0 * one_m_e2 / e3 * (halfL - e);
    const double beta0 = 1.0 / e2 - one_m_e2 / e3 * halfL;
    out.k1 = alpha0 / (2.0 - alpha0);
    out.k2 = beta0 / (2.0 - beta0);
    const double ba = beta0 - alpha0;
    out.k_prime =
        e2 * e2 * ba / ((2.0 - e2) * (2.0 * e2 - (2.0 - e2) * ba));
  }

  out.lambda11 = out.k1 * out.displaced_fluid_mass;
  out.lambda22 = out.k2 * out.displaced_fluid_mass;
  out.lambda33 = out.lambda22;
  out.lambda44 = 0.0;  // body of revolution
  out.lambda55 = out.k_prime * out.displaced_fluid_mass * (a * a + b * b) / 5.0;
  out.lambda66 = out.lambda55;
  return out;
}

void apply_added_mass(HydroParams& params, const SpheroidAddedMass& am) {
  params.lambda11 = am.lambda11;
  params.lambda22 = am.lambda22;
  params.lambda33 = am.lambda33;
  params.lambda44 = am.lambda44;
  params.lambda55 = am.lambda55;
  params.lambda66 = am.lambda66;
}

// -- thrust ---------------------------------------------------------------------

ThrustResultants thrust_resultants(const ThrustCommand& cmd,
                                   const HydroParams& params) {
  ThrustResultants r;
  r.X_T = cmd.F_L + cmd.F_R;
  r.Z_T = cmd.F_F + cmd.F_B;
  r.N_T = cmd.F_L * params.L_L - cmd.F_R * params.L_R;
  r.M_T = -cmd.F_F * params.L_F + cmd.F_B * params.L_B;
  return r;
}

// -- planar dynamics --------------------------------------------------------------

HorizontalState horizontal_derivatives(const HorizontalState& s,
                                       const HydroParams& p,
                                       const ThrustCommand& cmd) {
  const ThrustResultants T = thrust_resultants(cmd, p);
  const double u = s.u, v = s.v, r = s.r;

  const double X_visc = p.X_uu * u * std::abs(u) + p.X_vv * v * v +
                        p.X_rr * r * r + p.X_vr * v * r;
  const double Y_visc = p.Y_v * v + p.Y_r * r + p.Y_vabsv * v * std::abs(v) +
                        p.Y_rabsr * r * std::abs(r) +
                        p.Y_vabsr * v * std::abs(r);
  const double N_visc = p.N_v * v + p.N_r * r + p.N_vabsv * v * std::abs(v) +
                        p.N_rabsr * r * std::abs(r) +
                        p.N_vabsr * v * std::abs(r);

  HorizontalState d;
  d.u = (p.mass * r * v + p.lambda22 * v * r - X_visc + T.X_T) /
        (p.mass + p.lambda11);
  d.v = (-p.mass * r * u - p.lambda11 * u * r - Y_visc) /
        (p.mass + p.lambda22);
  d.r = ((p.lambda11 - p.lambda22) * u * v - N_visc + T.N_T) /
        (p.Jz + p.lambda66);
  d.xi = u * std::cos(s.alpha) - v * std::sin(s.alpha);
  d.eta = u * std::sin(s.alpha) + v * std::cos(s.alpha);
  d.alpha = r;
  return d;
}

ReducedTurnState reduced_turn_derivatives(const ReducedTurnState& s,
                                          const HydroParams& p,
                                          const ThrustCommand& cmd) {
  const ThrustResultants T = thrust_resultants(cmd, p);
  const double u = s.u, r = s.r;

  ReducedTurnState d;
  // X_rr r^2 is even in r: yaw of either sign costs surge thrust
  d.u = (-p.X_uu * u * std::abs(u) - p.X_rr * r * r + T.X_T) /
        (p.mass + p.lambda11);
  d.r = (-p.N_r * r - p.N_rabsr * r * std::abs(r) + T.N_T) /
        (p.Jz + p.lambda66);
  d.xi = u * std::cos(s.alpha);
  d.eta = u * std::sin(s.alpha);
  d.alpha = r;
  return d;
}

double surge_derivative(double V_xi, const HydroParams& p,
                        const ThrustCommand& cmd) {
  return (-p.X_uu * V_xi * std::abs(V_xi) + cmd.F_L + cmd.F_R) /
         (p.mass + p.lambda11);
}

VerticalState vertical_derivatives(const VerticalState& s,
                                   const HydroParams& p,
                                   const ThrustCommand& cmd) {
  const ThrustResultants T = thrust_resultants(cmd, p);
  const double u = s.u, w = s.w, q = s.q;

  const double X_visc = p.X_uu * u * std::abs(u);  // v = r = 0 in this plane
  const double Z_visc = p.Z_w * w + p.Z_absw * std::abs(w) + p.Z_q * q +
                        p.Z_wabsw * w * std::abs(w) +
                        p.Z_ww * w * std::abs(w) +
                        p.Z_wabsq * w * std::abs(q) +
                        p.Z_qabsq * q * std::abs(q);
  const double M_visc = p.M_w * w + p.M_absw * std::abs(w) + p.M_q * q +
                        p.M_wabsw * w * std::abs(w) + p.M_ww * w * w +
                        p.M_wabsq * w * std::abs(q) +
                        p.M_qabsq * q * std::abs(q);

  VerticalState d;
  d.u = (-p.mass * q * w - p.lambda33 * w * q - X_visc + T.X_T) /
        (p.mass + p.lambda11);
  d.w = (p.mass * q * u + p.lambda11 * u * q - Z_visc + T.Z_T) /
        (p.mass + p.lambda33);
  d.q = ((p.lambda33 - p.lambda11) * u * w - M_visc + T.M_T) /
        (p.Jy + p.lambda55);
  d.xi = u * std::cos(s.theta) + w * std::sin(s.theta);
  d.zeta = -u * std::sin(s.theta) + w * std::cos(s.theta);
  d.theta = q;
  return d;
}

double heave_derivative(double V_zeta, const HydroParams& p,
                        const ThrustCommand& cmd) {
  return (-p.Z_w * V_zeta - p.Z_wabsw * V_zeta * std::abs(V_zeta) + cmd.F_F +
          cmd.F_B) /
         (p.mass + p.lambda33);
}

// -- integrator adapters -----------------------------------------------------------

std::vector<std::string> SurgeModel::labels() { return {"xi_m", "Vxi_mps"}; }

void SurgeModel::operator()(double, std::span<const double> y,
                            std::span<double> dydt) const {
  dydt[0] = y[1];
  dydt[1] = surge_derivative(y[1], params, cmd);
}

std::vector<std::string> HeaveModel::labels() { return {"zeta_m", "Vzeta_mps"}; }

void HeaveModel::operator()(double, std::span<const double> y,
                            std::span<double> dydt) const {
  dydt[0] = y[1];
  dydt[1] = heave_derivative(y[1], params, cmd);
}

std::vector<std::string> ReducedTurnModel::labels() {
  return {"xi_m", "eta_m", "alpha_rad", "u_mps", "r_radps"};
}

std::vector<double> ReducedTurnModel::pack(const ReducedTurnState& s) {
  return {s.xi, s.eta, s.alpha, s.u, s.r};
}

ReducedTurnState ReducedTurnModel::unpack(std::span<const double> y) {
  return {y[0], y[1], y[2], y[3], y[4]};
}

void ReducedTurnModel::operator()(double, std::span<const double> y,
                                  std::span<double> dydt) const {
  const ReducedTurnState d =
      reduced_turn_derivatives(unpack(y), params, cmd);
  dydt[0] = d.xi;
  dydt[1] = d.eta;
  dydt[2] = d.alpha;
  dydt[3] = d.u;
  dydt[4] = d.r;
}

std::vector<std::string> HorizontalModel::labels() {
  return {"xi_m", "eta_m", "alpha_rad", "u_mps", "v_mps", "r_radps"};
}

std::vector<double> HorizontalModel::pack(const HorizontalState& s) {
  return {s.xi, s.eta, s.alpha, s.u, s.v, s.r};
}

HorizontalState HorizontalModel::unpack(std::span<const double> y) {
  return {y[0], y[1], y[2], y[3], y[4], y[5]};
}

void HorizontalModel::operator()(double, std::span<const double> y,
                                 std::span<double> dydt) const {
  const HorizontalState d = horizontal_derivatives(unpack(y), params, cmd);
  dydt[0] = d.xi;
  dydt[1] = d.eta;
  dydt[2] = d.alpha;
  dydt[3] = d.u;
  dydt[4] = d.v;
  dydt[5] = d.r;
}

std::vector<std::string> VerticalModel::labels() {
  return {"xi_m", "zeta_m", "theta_rad", "u_mps", "w_mps", "q_radps"};
}

std::vector<double> VerticalModel::pack(const VerticalState& s) {
  return {s.xi, s.zeta, s.theta, s.u, s.w, s.q};
}

VerticalState VerticalModel::unpack(std::span<const double> y) {
  return {y[0], y[1], y[2], y[3], y[4], y[5]};
}

void VerticalModel::operator()(double, std::span<const double> y,
                               std::span<double> dydt) const {
  const VerticalState d = vertical_derivatives(unpack(y), params, cmd);
  dydt[0] = d.xi;
  dydt[1] = d.zeta;
  dydt[2] = d.theta;
  dydt[3] = d.u;
  dydt[4] = d.w;
  dydt[5] = d.q;
}

}  // namespace wormsim
