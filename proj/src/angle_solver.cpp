#include "nlcap/angle_solver.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "nlcap/kernel_integrals.hpp"
#include "nlcap/root_finding.hpp"

namespace nlcap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSigmaEdge = 1e-6;
constexpr double kEndpointEps = 1e-9;
constexpr double kThetaTol = 1e-12;

struct MemoKey {
  double s, abs_tol, rel_tol, far_cut;
  int max_sub;
  bool operator<(const MemoKey& o) const {
    return std::tie(s, abs_tol, rel_tol, far_cut, max_sub) <
           std::tie(o.s, o.abs_tol, o.rel_tol, o.far_cut, o.max_sub);
  }
};

std::mutex g_memo_mutex;
std::map<MemoKey, double> g_denominator_regular;  // kappa2 at alpha = pi/2
std::map<MemoKey, double> g_denominator_ds;       // d/ds I(1, pi/2, s)

MemoKey make_key(double s, const QuadratureSpec& spec) {
  return {s, spec.abs_tol, spec.rel_tol, spec.far_field_cut, spec.max_subdivisions};
}

// kappa2bar(s) = cone_integral_regular(pi/2, s); every f evaluation divides
// by pi + s*kappa2bar, so it is memoized per (s, spec).
double denominator_regular(double s, const QuadratureSpec& spec) {
  const MemoKey key = make_key(s, spec);
  {
    std::lock_guard<std::mutex> lk(g_memo_mutex);
    auto it = g_denominator_regular.find(key);
    if (it != g_denominator_regular.end()) return it->second;
  }
  const double v = cone_integral_regular(kPi / 2, s, spec);
  std::lock_guard<std::mutex> lk(g_memo_mutex);
  return g_denominator_regular.emplace(key, v).first->second;
}

double denominator_ds(double s, const QuadratureSpec& spec) {
  const MemoKey key = make_key(s, spec);
  {
    std::lock_guard<std::mutex> lk(g_memo_mutex);
    auto it = g_denominator_ds.find(key);
    if (it != g_denominator_ds.end()) return it->second;
  }
  const double v = cone_integral_ds({kPi / 2, s}, spec);
  std::lock_guard<std::mutex> lk(g_memo_mutex);
  return g_denominator_ds.emplace(key, v).first->second;
}

void check_f_args(double s, double alpha) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("f_value: s must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha < kPi))
    throw std::domain_error("f_value: alpha must lie in (0, pi)");
}

}  // namespace

void AngleQuery::validate() const {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("AngleQuery: s must lie in [0, 1]");
  if (!(std::abs(sigma) < 1.0 - kSigmaEdge))
    throw std::domain_error("AngleQuery: |sigma| must stay below 1 - 1e-6");
}

void clear_angle_solver_cache() {
  std::lock_guard<std::mutex> lk(g_memo_mutex);
  g_denominator_regular.clear();
  g_denominator_ds.clear();
}

double f_value(double s, double alpha, const QuadratureSpec& spec) {
  check_f_args(s, alpha);
  if (s == 1.0) return 1.0 - std::cos(alpha);
  // Multiply numerator and denominator by s: both stay O(1) as s -> 0.
  const double num = 2.0 * alpha + s * cone_integral_regular(alpha, s, spec);
  const double den = kPi + s * denominator_regular(s, spec);
  return std::pow(std::sin(alpha), s) * num / den;
}

double f_dalpha(double s, double alpha, const QuadratureSpec& spec) {
  check_f_args(s, alpha);
  if (s == 1.0) return std::sin(alpha);
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  const double num = s * (ca / sa) * (2.0 * alpha + s * cone_integral_regular(alpha, s, spec)) +
                     2.0 + 2.0 * s * radial_inner_regular(alpha, s, spec);
  const double den = kPi + s * denominator_regular(s, spec);
  return std::pow(sa, s) * num / den;
}

double f_ds(double s, double alpha, const QuadratureSpec& spec) {
  check_f_args(s, alpha);
  if (s == 1.0) {
    const double sa = std::sin(alpha);
    const double ca = std::cos(alpha);
    return (1.0 - ca) * (std::log(sa) - std::log(2.0)) - std::log1p(ca) + std::log(2.0);
  }
  const double sa = std::sin(alpha);
  const double pslog = std::pow(sa, s);
  const double num = 2.0 * alpha + s * cone_integral_regular(alpha, s, spec);  // s * I
  const double den = kPi + s * denominator_regular(s, spec);                   // s * Ibar
  const double dI = cone_integral_ds({alpha, s}, spec);
  const double dIbar = denominator_ds(s, spec);
  // Quotient rule on f = (sin a)^s I / Ibar, written with s*I and s*Ibar.
  return pslog * (std::log(sa) * num / den + s * dI / den - num * (s * dIbar) / (den * den));
}

AngleSolution solve_theta(const AngleQuery& q, const QuadratureSpec& spec) {
  q.validate();
  spec.validate();
  if (q.s >= 1.0 - kEndpointEps) {
    const double theta = std::acos(-q.sigma);
    return {theta, 0.0, 0, std::sin(theta)};
  }
  if (q.s <= kEndpointEps) {
    return {kPi / 2 * (1.0 + q.sigma), 0.0, 0, 2.0 / kPi};
  }

  // Mirror reduction: solve for sigma' = -|sigma| on (0, pi/2] where the
  // target 1 + sigma' lies in (0, 1] and f is increasing.
  const bool mirrored = q.sigma > 0.0;
  const double target = 1.0 - std::abs(q.sigma);
  auto g = [&](double a) { return f_value(q.s, a, spec) - target; };

  double hi = kPi / 2;
  double ghi = g(hi);  // equals |sigma| up to quadrature noise
  double lo = 1e-4;
  double glo = g(lo);
  int extend = 0;
  while (glo > 0.0 && lo > 1e-13) {
    lo *= 0.25;
    glo = g(lo);
    ++extend;
  }
  if (glo > 0.0 || ghi < 0.0)
    throw std::runtime_error("solve_theta: root bracket failed; quadrature inconsistency");

  RootResult root = solve_bracketed(g, lo, hi, glo, ghi, kThetaTol);
  const double alpha = root.x;
  const double fa = f_dalpha(q.s, alpha, spec);
  return {mirrored ? kPi - alpha : alpha, std::abs(root.fx), root.iterations + extend, fa};
}

double dtheta_dsigma(const AngleQuery& q, const QuadratureSpec& spec) {
  return 1.0 / solve_theta(q, spec).f_alpha;
}

double dtheta_ds(const AngleQuery& q, const QuadratureSpec& spec) {
  q.validate();
  if (q.s >= 1.0 - kEndpointEps || q.s <= kEndpointEps) {
    // One-sided value at the endpoint laws.
    const double s0 = q.s >= 0.5 ? 1.0 : std::max(q.s, 1e-6);
    const AngleQuery inner{s0, -std::abs(q.sigma)};
    const double theta = s0 == 1.0 ? std::acos(std::abs(q.sigma))
                                   : solve_theta(inner, spec).theta;
    const double v = -f_ds(s0, theta, spec) / f_dalpha(s0, theta, spec);
    return q.sigma > 0.0 ? -v : v;
  }
  const AngleQuery reduced{q.s, -std::abs(q.sigma)};
  const double theta = solve_theta(reduced, spec).theta;
  const double v = -f_ds(q.s, theta, spec) / f_dalpha(q.s, theta, spec);
  return q.sigma > 0.0 ? -v : v;
}

}  // namespace nlcap
