#pragma once

#include <cmath>
#include <cstdlib>
#include <span>

namespace zsl {

// |x|^a with exact repeated multiplication for small integer exponents.
inline double abs_pow(double x, double a) {
  const double ax = std::abs(x);
  if (a == 2.0) return ax * ax;
  if (a == 1.0) return ax;
  if (ax == 0.0) return 0.0;
  const double r = std::nearbyint(a);
  if (r == a && a > 0.0 && a <= 16.0) {
    double out = 1.0;
    for (int i = 0; i < static_cast<int>(r); ++i) out *= ax;
    return out;
  }
  return std::pow(ax, a);
}

// Signed power {z}^a = |z|^(a-1) z, with {0}^a = 0.
inline double signed_pow(double z, double a) {
  if (z == 0.0) return 0.0;
  const double m = abs_pow(z, a);
  return z > 0.0 ? m : -m;
}

// argmin_x sum_i w_i |v_i - x|^p for p > 1, by bisection on [min v, max v]
// down to an absolute bracket width of `tol` (closed form at p = 2).
double lp_center(std::span<const double> weights, std::span<const double> values, double p,
                 double tol = 1e-12);

// sum_i w_i |v_i - x|^p
double lp_deviation(std::span<const double> weights, std::span<const double> values, double x,
                    double p);

}  // namespace zsl
