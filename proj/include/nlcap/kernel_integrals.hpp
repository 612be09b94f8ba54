#pragma once

// Interaction integral of a planar cone of half-opening alpha against a
// point at unit distance, for fractional kernel exponent s in (0,1]:
//
//   cone_integral(alpha, s) = 2 * int_0^alpha radial_inner(t, s) dt
//   radial_inner(t, s)      = int_0^inf r (r^2 + 2 r cos t + 1)^{-(2+s)/2} dr
//
// The radial integral carries a 1/s pole as s -> 0. All quadrature paths
// split it off analytically: the far field r in [F, inf) is inverted with
// r = 1/u, and the exactly integrable part of u^{s-1} is evaluated in closed
// form. What remains ("regular" parts below) is bounded uniformly in s,
// which keeps every operation accurate over the whole s range.

#include "nlcap/quadrature.hpp"

namespace nlcap {

struct ConeParams {
  double alpha;  // half-opening, radians in (0, pi)
  double s;      // kernel exponent in (0, 1]; s = 1 uses closed forms
  void validate() const;
};

/// Inner radial integral at fixed angle t in [0, pi).
double radial_inner(double t, double s, const QuadratureSpec& spec = {});

/// radial_inner(t, s) - 1/s. Bounded uniformly for small s; its s -> 0
/// limit is -t cos(t)/sin(t).
double radial_inner_regular(double t, double s, const QuadratureSpec& spec = {});

/// Log-weighted inner radial integral
///   int_0^inf log(r^2 + 2 r cos t + 1) r (r^2 + 2 r cos t + 1)^{-(2+s)/2} dr,
/// the t-slice of the s-derivative of cone_integral.
double radial_inner_log(double t, double s, const QuadratureSpec& spec = {});

/// I(1, alpha, s). Exactly 2 sin(a)/(1 + cos(a)) at s = 1.
double cone_integral(const ConeParams& p, const QuadratureSpec& spec = {});

/// cone_integral - 2*alpha/s, the uniformly bounded part. Its s -> 0 limit
/// is -2 * int_0^alpha t cos(t)/sin(t) dt.
double cone_integral_regular(double alpha, double s, const QuadratureSpec& spec = {});

/// d/ds of cone_integral; at s = 1 equals
/// -(4(1-cos a) + 2(log(cos a + 1) - log 2))/sin a in closed form.
double cone_integral_ds(const ConeParams& p, const QuadratureSpec& spec = {});

/// d/dalpha of cone_integral = 2 * radial_inner(alpha, s); 2/(1 + cos a)
/// at s = 1.
double cone_integral_dalpha(const ConeParams& p, const QuadratureSpec& spec = {});

namespace detail {
/// Quadrature path of cone_integral_ds with no closed-form dispatch at
/// s = 1; used to check the closed form against the general machinery.
double cone_integral_ds_quadrature(double alpha, double s, const QuadratureSpec& spec);
/// radial_inner_log minus its pole part; see cone_integral_ds.
double radial_inner_log_regular(double t, double s, const QuadratureSpec& spec);
/// Pole part of radial_inner_log for far-field cut F.
double log_pole(double s, double far_cut);
}  // namespace detail

}  // namespace nlcap
