#include "nlcap/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlcap/angle_solver.hpp"
#include "nlcap/parallel.hpp"

namespace nlcap {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

ExpansionCoefficients expand_at_one(double sigma) {
  if (!(std::abs(sigma) < 1.0))
    throw std::domain_error("expand_at_one: |sigma| must stay below 1");
  if (sigma == 0.0) return {Regime::AtOne, kPi / 2, 0.0};
  const double num = 2.0 * sigma * std::log(2.0) + (1.0 - sigma) * std::log1p(-sigma) -
                     (1.0 + sigma) * std::log1p(sigma);
  return {Regime::AtOne, std::acos(-sigma), -num / (2.0 * std::sqrt(1.0 - sigma * sigma))};
}

ExpansionCoefficients expand_at_zero(double sigma, const QuadratureSpec& spec) {
  if (!(std::abs(sigma) <= 1.0 - 1e-6))
    throw std::domain_error("expand_at_zero: |sigma| must stay below 1 - 1e-6");
  const double theta0 = kPi / 2 * (1.0 + sigma);
  if (sigma == 0.0) return {Regime::AtZero, theta0, 0.0};
  const double xi_half_pi = kPi / 2 * std::log(2.0);  // xi(pi/2) in closed form
  const double bracket = theta0 * std::log(std::cos(kPi * sigma / 2)) - xi(theta0, spec) +
                         (1.0 + sigma) * xi_half_pi;
  return {Regime::AtZero, theta0, -bracket};
}

double truncated_theta(const ExpansionCoefficients& c, double s) {
  return c.regime == Regime::AtOne ? c.theta0 + c.slope * (1.0 - s)
                                   : c.theta0 + c.slope * s;
}

std::vector<SlopeSample> slope_check(Regime regime, double sigma,
                                     std::span<const double> h_values,
                                     const QuadratureSpec& spec) {
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0 && h_values[i] <= 0.2))
      throw std::domain_error("slope_check: offsets must lie in (0, 0.2]");
    if (i > 0 && !(h_values[i] < h_values[i - 1]))
      throw std::domain_error("slope_check: offsets must be sorted descending");
  }
  const ExpansionCoefficients coef =
      regime == Regime::AtOne ? expand_at_one(sigma) : expand_at_zero(sigma, spec);

  std::vector<SlopeSample> out(h_values.size());
  parallel_for(h_values.size(), [&](std::size_t i) {
    const double h = h_values[i];
    const double s = regime == Regime::AtOne ? 1.0 - h : h;
    const double theta = solve_theta({s, sigma}, spec).theta;
    const double empirical = (theta - coef.theta0) / h;
    out[i] = {h, empirical, coef.slope, std::abs(empirical - coef.slope)};
  });
  return out;
}

}  // namespace nlcap
