#include "nlcap/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlcap {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kXiEdge = 1e-6;

double xi_integrand(double t) {
  if (t == 0.0) return 1.0;
  return t * std::cos(t) / std::sin(t);
}
}  // namespace

double xi(double alpha, const QuadratureSpec& spec) {
  if (!(alpha >= 0.0 && alpha <= kPi - kXiEdge))
    throw std::domain_error("xi: alpha must lie in [0, pi - 1e-6]");
  if (alpha == 0.0) return 0.0;
  std::vector<double> bp;
  if (alpha > kPi / 2) bp.push_back(kPi / 2);
  if (alpha > 2.5) {
    // Logarithmic blow-up toward pi; panel scales must follow pi - alpha.
    for (double d = kPi - alpha; d < alpha; d *= 2.0) {
      if (alpha - d <= 0.0) break;
      bp.push_back(alpha - d);
    }
  }
  return integrate_value(xi_integrand, 0.0, alpha, spec, bp);
}

double lemma_h(double a) {
  if (!(std::abs(a) <= 1.0 - 1e-8))
    throw std::domain_error("lemma_h: |a| must stay below 1 - 1e-8");
  return (2.0 * a * (1.0 - std::log(2.0) + std::log1p(a)) - 2.0) / (a * a - 1.0);
}

double lemma_H(double alpha) {
  if (!(alpha > 0.0 && alpha <= kPi / 2))
    throw std::domain_error("lemma_H: alpha must lie in (0, pi/2]");
  const double ca = std::cos(alpha);
  return (4.0 * (1.0 - ca) + 2.0 * (std::log1p(ca) - std::log(2.0))) / std::sin(alpha);
}

double kappa1_at_zero(double t) {
  if (!(t >= 0.0 && t <= kPi / 2))
    throw std::domain_error("kappa1_at_zero: t must lie in [0, pi/2]");
  if (t == 0.0) return -1.0;
  return -t * std::cos(t) / std::sin(t);
}

double kappa2_at_zero(double alpha, const QuadratureSpec& spec) {
  if (!(alpha >= 0.0 && alpha <= kPi / 2))
    throw std::domain_error("kappa2_at_zero: alpha must lie in [0, pi/2]");
  return -2.0 * xi(alpha, spec);
}

PhiPsi phi_psi(double r, double t) {
  if (!(t > 0.0 && t < kPi))
    throw std::domain_error("phi_psi: t must lie in (0, pi)");
  if (!(r >= 0.0))
    throw std::domain_error("phi_psi: r must be nonnegative");
  const double c = std::cos(t);
  const double st = std::sin(t);
  const double arc = std::atan((c + r) / st) * (c / st);
  if (r == 0.0) {
    return {-std::numeric_limits<double>::infinity(), -arc};
  }
  const double psi = 0.5 * std::log(r * r + 2.0 * r * c + 1.0) - arc;
  return {std::log(r) - psi, psi};
}

}  // namespace nlcap
