#pragma once

// Closed-form companions of the cone integrals. Trigonometric quotients are
// evaluated as sin/cos products, never through tan, so pi/2 is an ordinary
// point everywhere.

#include "nlcap/quadrature.hpp"

namespace nlcap {

/// xi(alpha) = int_0^alpha t cos(t)/sin(t) dt for alpha in [0, pi - 1e-6].
/// The integrand has a removable point at 0 (value 1) and a simple zero at
/// pi/2; the integral diverges logarithmically as alpha -> pi.
double xi(double alpha, const QuadratureSpec& spec = {});

/// h(a) = (2a(1 - log 2 + log(a+1)) - 2)/(a^2 - 1), |a| < 1 - 1e-8.
/// Closed form of the log-weighted radial integral at s = 1 with a = cos t.
double lemma_h(double a);

/// H(alpha) = (4(1 - cos a) + 2(log(cos a + 1) - log 2))/sin a on (0, pi/2].
/// Antiderivative of lemma_h(cos a); tends to 0 as alpha -> 0+.
double lemma_H(double alpha);

/// s -> 0 limit of radial_inner_regular: -t cos(t)/sin(t) on (0, pi/2],
/// extended by its limit -1 at t = 0.
double kappa1_at_zero(double t);

/// s -> 0 limit of cone_integral_regular: -2 xi(alpha).
double kappa2_at_zero(double alpha, const QuadratureSpec& spec = {});

struct PhiPsi {
  double phi;
  double psi;
};

/// Antiderivative pair for the radial kernel at s = 0:
///   phi(r,t) = (cos t/sin t) atan((cos t + r)/sin t) - log((r^2+2r cos t+1)/r^2)/2
///   psi(r,t) = log r - phi(r,t)
/// so that d/dr phi = (2 cos t + 1/r)/(r^2 + 2 r cos t + 1) and
/// d/dr psi = r/(r^2 + 2 r cos t + 1). phi is -inf at r = 0; psi is finite.
PhiPsi phi_psi(double r, double t);

}  // namespace nlcap
