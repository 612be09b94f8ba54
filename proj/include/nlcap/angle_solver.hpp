#pragma once

// The implicit contact-angle law: theta(s, sigma) solves
//   f(s, theta) = 1 + sigma,  f(s, a) = (sin a)^s I(1,a,s) / I(1,pi/2,s),
// with I = cone_integral. f(s, .) is strictly increasing, f(s, pi/2) = 1,
// and f obeys f(s, a) + f(s, pi - a) = 2, which mirrors
// theta(s, -sigma) = pi - theta(s, sigma). The solver reduces sigma > 0 to
// the mirror problem and brackets the root inside (0, pi/2].

#include "nlcap/quadrature.hpp"

namespace nlcap {

struct AngleQuery {
  double s;      // in [0, 1]; endpoints within 1e-9 dispatch to limit laws
  double sigma;  // in (-1 + 1e-6, 1 - 1e-6)
  void validate() const;
};

struct AngleSolution {
  double theta;     // radians in (0, pi)
  double residual;  // |f(s, theta) - (1 + sigma)| at the accepted iterate
  int iterations;
  double f_alpha;   // d/dalpha f at the root; always positive
};

/// f(s, alpha). Stable down to s -> 0 (evaluated as a ratio of the
/// pole-free forms). At s = 1 equals 1 - cos(alpha) exactly.
double f_value(double s, double alpha, const QuadratureSpec& spec = {});

/// d/dalpha f(s, alpha); equals sin(alpha) exactly at s = 1.
double f_dalpha(double s, double alpha, const QuadratureSpec& spec = {});

/// d/ds f(s, alpha); at s = 1 equals
/// (1 - cos a)(log sin a - log 2) - log(cos a + 1) + log 2.
double f_ds(double s, double alpha, const QuadratureSpec& spec = {});

/// Solves f(s, theta) = 1 + sigma to 1e-12 in theta.
AngleSolution solve_theta(const AngleQuery& q, const QuadratureSpec& spec = {});

/// d theta / d sigma = 1 / f_dalpha at the root; strictly positive.
double dtheta_dsigma(const AngleQuery& q, const QuadratureSpec& spec = {});

/// d theta / d s = -f_ds / f_dalpha at the root.
double dtheta_ds(const AngleQuery& q, const QuadratureSpec& spec = {});

/// Drops the per-s memo of the denominator integral I(1, pi/2, s).
void clear_angle_solver_cache();

}  // namespace nlcap
