#pragma once

// Adaptive Gauss-Kronrod (7-15) quadrature with caller-supplied breakpoints.
// All improper integrals in this library are transformed to finite intervals
// before reaching the engine, so only finite [a,b] is supported here.

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlcap/summation.hpp"

namespace nlcap {

/// Tolerances and limits shared by every integral in the library.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  /// Radius where radial integrals switch from direct panels to the
  /// inverted variable; must exceed 1 so the r=1 breakpoint stays interior.
  double far_field_cut = 2.0;

  void validate() const {
    if (!(abs_tol >= 0) || !(rel_tol >= 0) || abs_tol + rel_tol <= 0)
      throw std::invalid_argument("QuadratureSpec: need abs_tol + rel_tol > 0");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadratureSpec: max_subdivisions must be positive");
    if (!(far_field_cut > 1))
      throw std::invalid_argument("QuadratureSpec: far_field_cut must exceed 1");
  }

  /// Tighter spec for inner integrals of a nested quadrature, so that inner
  /// noise stays below the outer error estimate.
  QuadratureSpec tightened(double factor) const {
    QuadratureSpec t = *this;
    t.abs_tol = std::max(abs_tol * factor, 1e-15);
    t.rel_tol = std::max(rel_tol * factor, 2e-15);
    return t;
  }
};

/// Thrown when the subdivision limit is reached before the tolerance.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double value, double error)
      : std::runtime_error(what + " (value=" + std::to_string(value) +
                           ", error=" + std::to_string(error) + ")"),
        value_(value),
        error_(error) {}
  double value() const { return value_; }
  double error() const { return error_; }

 private:
  double value_;
  double error_;
};

struct QuadratureResult {
  double value;
  double error;
  int panels;
};

namespace detail {

// QUADPACK dqk15 nodes and weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// 7-point Gauss weights for the nodes with odd index above (plus center).
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    fv[i] = f(c - dx);
    fv[14 - i] = f(c + dx);
  }
  double kron = kKronrodWeights[7] * fv[7];
  double gauss = kGaussWeights[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kron += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (fv[i] + fv[14 - i]);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kron * h;
  p.error = std::abs((kron - gauss) * h);
  return p;
}

}  // namespace detail

/// Integrates f over [a,b] to the requested tolerance, subdividing the
/// worst panel first. `breakpoints` seeds the initial partition; points
/// outside (a,b) are ignored. Endpoints are never evaluated.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                           std::vector<double> breakpoints = {}) {
  spec.validate();
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0};
    throw std::invalid_argument("integrate: need a <= b");
  }

  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  std::priority_queue<detail::Panel> heap;
  double running = 0.0;
  double total_err = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (!(lo >= a && hi <= b) || !(lo < hi)) continue;
    detail::Panel p = detail::gk15(f, lo, hi);
    running += p.value;
    total_err += p.error;
    heap.push(p);
    ++panels;
  }

  auto converged = [&]() {
    return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(running));
  };

  while (!converged()) {
    if (panels >= spec.max_subdivisions) {
      throw ToleranceError("integrate: subdivision limit reached", running, total_err);
    }
    detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Interval no longer splittable in double precision; accept its error.
      heap.push(detail::Panel{worst.a, worst.b, worst.value, 0.0});
      total_err = std::max(total_err - worst.error, 0.0);
      continue;
    }
    detail::Panel left = detail::gk15(f, worst.a, mid);
    detail::Panel right = detail::gk15(f, mid, worst.b);
    running += left.value + right.value - worst.value;
    total_err = std::max(total_err + left.error + right.error - worst.error, 0.0);
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Final pass: compensated sum in spatial order, independent of heap order.
  std::vector<detail::Panel> all;
  all.reserve(panels);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  CompensatedSum total;
  for (const detail::Panel& p : all) total.add(p.value);
  return {total.value(), total_err, panels};
}

/// Convenience wrapper returning just the value.
template <class F>
double integrate_value(F&& f, double a, double b, const QuadratureSpec& spec,
                       std::vector<double> breakpoints = {}) {
  return integrate(std::forward<F>(f), a, b, spec, std::move(breakpoints)).value;
}

/// Geometric grading points accumulating at `edge`, useful ahead of known
/// endpoint singularities: edge + (far-edge)*ratio^k for k = 1..levels.
inline std::vector<double> graded_points(double edge, double far, int levels,
                                         double ratio = 0.25) {
  std::vector<double> pts;
  pts.reserve(levels);
  double d = (far - edge);
  for (int k = 1; k <= levels; ++k) {
    d *= ratio;
    if (edge + d == edge) break;
    pts.push_back(edge + d);
  }
  return pts;
}

}  // namespace nlcap
