#include "nlcap/kernel_integrals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlcap {

namespace {

constexpr double kPi = std::numbers::pi;

void check_t_s(double t, double s) {
  if (!(t >= 0.0 && t < kPi))
    throw std::domain_error("radial_inner: t must lie in [0, pi)");
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("radial_inner: s must lie in (0, 1]");
}

// (1 + 2 c u + u^2)^{-(2+s)/2} - 1, accurate for small u where the naive
// pow() result would cancel against 1.
double q_minus_one(double u, double c, double s) {
  const double w = u * (2.0 * c + u);
  return std::expm1(-0.5 * (2.0 + s) * std::log1p(w));
}

// Breakpoints for the direct piece on [0, F]: the r = 1 seam and, for
// obtuse t, the kernel minimum at r = -cos t (width sin t).
std::vector<double> near_breaks(double c, double st, double F) {
  std::vector<double> bp{1.0};
  if (c < 0.0) {
    const double r0 = -c;
    bp.push_back(r0);
    if (r0 - st > 0.0) bp.push_back(r0 - st);
    if (r0 + st < F) bp.push_back(r0 + st);
  }
  return bp;
}

std::vector<double> mapped_breaks(double c, double st, double cut, int grade_levels) {
  std::vector<double> bp = graded_points(0.0, cut, grade_levels);
  if (c < 0.0) {
    const double u0 = -c;
    if (u0 < cut) bp.push_back(u0);
    if (u0 - st > 0.0 && u0 - st < cut) bp.push_back(u0 - st);
    if (u0 + st < cut) bp.push_back(u0 + st);
  }
  return bp;
}

}  // namespace

void ConeParams::validate() const {
  if (!(alpha > 0.0 && alpha < kPi))
    throw std::domain_error("ConeParams: alpha must lie in (0, pi)");
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("ConeParams: s must lie in (0, 1]");
}

double radial_inner_regular(double t, double s, const QuadratureSpec& spec) {
  check_t_s(t, s);
  spec.validate();
  const double c = std::cos(t);
  const double st = std::sin(t);
  const double F = spec.far_field_cut;
  const double expo = -0.5 * (2.0 + s);

  const double near =
      integrate_value([&](double r) { return r * std::pow(r * r + 2.0 * r * c + 1.0, expo); },
                      0.0, F, spec, near_breaks(c, st, F));
  const double excess =
      integrate_value([&](double u) { return std::pow(u, s - 1.0) * q_minus_one(u, c, s); },
                      0.0, 1.0 / F, spec, mapped_breaks(c, st, 1.0 / F, 18));
  // int_F^inf r^{-1-s} dr - 1/s = (F^{-s} - 1)/s, evaluated without
  // cancellation at small s.
  const double pole_rest = std::expm1(-s * std::log(F)) / s;
  return near + pole_rest + excess;
}

double radial_inner(double t, double s, const QuadratureSpec& spec) {
  return 1.0 / s + radial_inner_regular(t, s, spec);
}

namespace detail {

double log_pole(double s, double F) {
  const double fs = std::pow(F, -s);
  return 2.0 * fs / (s * s) + 2.0 * fs * std::log(F) / s;
}

double radial_inner_log_regular(double t, double s, const QuadratureSpec& spec) {
  check_t_s(t, s);
  spec.validate();
  const double c = std::cos(t);
  const double st = std::sin(t);
  const double F = spec.far_field_cut;
  const double expo = -0.5 * (2.0 + s);

  const double near = integrate_value(
      [&](double r) {
        const double w = r * (2.0 * c + r);
        return std::log1p(w) * r * std::pow(1.0 + w, expo);
      },
      0.0, F, spec, near_breaks(c, st, F));
  // Mapped far field with the exactly integrable u^{s-1} log(1/u) part
  // removed; the remainder vanishes at u = 0.
  const double excess = integrate_value(
      [&](double u) {
        const double w = u * (2.0 * c + u);
        const double q = std::pow(1.0 + w, expo);
        return std::pow(u, s - 1.0) *
               (std::log1p(w) * q - 2.0 * std::log(u) * q_minus_one(u, c, s));
      },
      0.0, 1.0 / F, spec, mapped_breaks(c, st, 1.0 / F, 18));
  return near + excess;
}

// The t-integrands grow like (pi - t)^{-1-s}; when alpha approaches pi the
// boundary layer near t = alpha has width pi - alpha and needs matching
// panel scales.
std::vector<double> cone_t_breaks(double alpha) {
  std::vector<double> bp;
  if (alpha > kPi / 2) bp.push_back(kPi / 2);
  if (alpha > 2.5) {
    for (double d = kPi - alpha; d < alpha; d *= 2.0) {
      if (alpha - d <= 0.0) break;
      bp.push_back(alpha - d);
    }
  }
  return bp;
}

double cone_integral_ds_quadrature(double alpha, double s, const QuadratureSpec& spec) {
  const QuadratureSpec inner = spec.tightened(0.01);
  const double pole = log_pole(s, spec.far_field_cut);
  const double reg = integrate_value(
      [&](double t) { return radial_inner_log_regular(t, s, inner); }, 0.0, alpha, spec,
      cone_t_breaks(alpha));
  return -(alpha * pole + reg);
}

}  // namespace detail

double radial_inner_log(double t, double s, const QuadratureSpec& spec) {
  return detail::log_pole(s, spec.far_field_cut) +
         detail::radial_inner_log_regular(t, s, spec);
}

double cone_integral_regular(double alpha, double s, const QuadratureSpec& spec) {
  if (!(alpha >= 0.0 && alpha < kPi))
    throw std::domain_error("cone_integral: alpha must lie in [0, pi)");
  if (alpha == 0.0) return 0.0;
  const QuadratureSpec inner = spec.tightened(0.01);
  const double k2 = integrate_value(
      [&](double t) { return radial_inner_regular(t, s, inner); }, 0.0, alpha, spec,
      detail::cone_t_breaks(alpha));
  return 2.0 * k2;
}

double cone_integral(const ConeParams& p, const QuadratureSpec& spec) {
  p.validate();
  if (p.s == 1.0) return 2.0 * std::sin(p.alpha) / (1.0 + std::cos(p.alpha));
  return 2.0 * p.alpha / p.s + cone_integral_regular(p.alpha, p.s, spec);
}

double cone_integral_ds(const ConeParams& p, const QuadratureSpec& spec) {
  p.validate();
  if (p.s == 1.0) {
    const double ca = std::cos(p.alpha);
    return -(4.0 * (1.0 - ca) + 2.0 * (std::log(ca + 1.0) - std::log(2.0))) /
           std::sin(p.alpha);
  }
  return detail::cone_integral_ds_quadrature(p.alpha, p.s, spec);
}

double cone_integral_dalpha(const ConeParams& p, const QuadratureSpec& spec) {
  p.validate();
  if (p.s == 1.0) return 2.0 / (1.0 + std::cos(p.alpha));
  return 2.0 * radial_inner(p.alpha, p.s, spec);
}

}  // namespace nlcap
