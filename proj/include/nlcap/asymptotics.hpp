#pragma once

// First-order expansions of theta(s, sigma) at the two ends of the s range:
//   near s = 1: theta = arccos(-sigma) + slope1 * (1 - s) + o(1 - s)
//   near s = 0: theta = (pi/2)(1 + sigma) + slope0 * s + o(s)
// together with a finite-difference verifier against the exact solver.

#include <span>
#include <vector>

#include "nlcap/quadrature.hpp"

namespace nlcap {

enum class Regime { AtOne, AtZero };

struct ExpansionCoefficients {
  Regime regime;
  double theta0;  // radians
  /// Signed slope: multiplies (1 - s) for AtOne and s for AtZero.
  double slope;
};

ExpansionCoefficients expand_at_one(double sigma);
ExpansionCoefficients expand_at_zero(double sigma, const QuadratureSpec& spec = {});

/// Truncated expansion evaluated at s.
double truncated_theta(const ExpansionCoefficients& c, double s);

struct SlopeSample {
  double h;
  double empirical_slope;
  double analytic_slope;
  double gap;
};

/// Empirical slopes [theta(1-h) - theta0]/h (AtOne) or [theta(h) - theta0]/h
/// (AtZero) against the analytic coefficient, for each offset in h_values
/// (descending, within (0, 0.2]). Results keep the input order.
std::vector<SlopeSample> slope_check(Regime regime, double sigma,
                                     std::span<const double> h_values,
                                     const QuadratureSpec& spec = {});

}  // namespace nlcap
