#pragma once

// Independent evaluation of the spheroid shape factors from their integral
// definitions (test-only; it never touches the library's closed forms).
//
//   alpha0 = a b^2 Int_0^inf ds / ((a^2+s)^{3/2} (b^2+s))
//   beta0  = a b^2 Int_0^inf ds / ((a^2+s)^{1/2} (b^2+s)^2)
//
// Substituting s = a^2 t/(1-t) and then 1-t = z^2 turns both into smooth
// rational integrals on [0, 1]:
//
//   alpha0 = 2 b^2     Int_0^1 z^2 / (b^2 z^2 + a^2 (1-z^2))   dz
//   beta0  = 2 a^2 b^2 Int_0^1 z^2 / (b^2 z^2 + a^2 (1-z^2))^2 dz

#include <cmath>
#include <functional>

namespace oracle {

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double lo, double hi, double f_lo, double f_mid,
                               double f_hi, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), mh = 0.5 * (mid + hi);
  const double f_lm = f(lm), f_mh = f(mh);
  const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
  const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_mh + f_hi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  // stop halving the tolerance once rounding noise takes over
  const double child_tol = std::max(tol / 2.0, 1e-17);
  return adaptive_simpson(f, lo, mid, f_lo, f_lm, f_mid, child_tol,
                          depth - 1) +
         adaptive_simpson(f, mid, hi, f_mid, f_mh, f_hi, child_tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
  const double mid = 0.5 * (lo + hi);
  return adaptive_simpson(f, lo, hi, f(lo), f(mid), f(hi), tol, 20);
}

struct ShapeFactors {
  double alpha0;
  double beta0;
};

inline ShapeFactors spheroid_shape_factors(double a, double b) {
  const double a2 = a * a, b2 = b * b;
  const auto denom = [&](double z) { return b2 * z * z + a2 * (1.0 - z * z); };
  const double alpha0 =
      2.0 * b2 *
      integrate([&](double z) { return z * z / denom(z); }, 0.0, 1.0, 1e-13);
  const double beta0 =
      2.0 * a2 * b2 *
      integrate([&](double z) { return z * z / (denom(z) * denom(z)); }, 0.0,
                1.0, 1e-13);
  return {alpha0, beta0};
}

/// Added-mass factors from the quadrature shape factors.
struct AddedMassFactors {
  double k1;
  double k2;
  double k_prime;
};

inline AddedMassFactors spheroid_factors(double a, double b) {
  const auto [alpha0, beta0] = spheroid_shape_factors(a, b);
  const double e2 = 1.0 - (b / a) * (b / a);
  const double ba = beta0 - alpha0;
  AddedMassFactors out;
  out.k1 = alpha0 / (2.0 - alpha0);
  out.k2 = beta0 / (2.0 - beta0);
  out.k_prime = e2 * e2 * ba / ((2.0 - e2) * (2.0 * e2 - (2.0 - e2) * ba));
  return out;
}

}  // namespace oracle
