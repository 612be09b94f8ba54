#pragma once

#include <cmath>
#include <stdexcept>

namespace nlcap {

struct RootResult {
  double x;
  double fx;
  int iterations;
};

/// Secant iteration safeguarded by bisection on a sign-changing bracket.
/// Requires f(lo) <= 0 <= f(hi); converges to |hi-lo| <= xtol.
template <class F>
RootResult solve_bracketed(F&& f, double lo, double hi, double flo, double fhi,
                           double xtol, int max_iter = 200) {
  if (flo > 0.0 || fhi < 0.0)
    throw std::runtime_error("solve_bracketed: invalid bracket");
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};

  double x0 = lo, f0 = flo;
  double x1 = hi, f1 = fhi;
  int iters = 0;
  while (hi - lo > xtol) {
    if (++iters > max_iter)
      throw std::runtime_error("solve_bracketed: iteration limit reached");
    double x;
    const double df = f1 - f0;
    if (df != 0.0) {
      x = x1 - f1 * (x1 - x0) / df;
    } else {
      x = 0.5 * (lo + hi);
    }
    // Keep the step inside the bracket; fall back to bisection otherwise.
    const double margin = 0.01 * (hi - lo);
    if (!(x > lo + margin && x < hi - margin)) x = 0.5 * (lo + hi);

    const double fx = f(x);
    x0 = x1;
    f0 = f1;
    x1 = x;
    f1 = fx;
    if (fx == 0.0) return {x, 0.0, iters};
    if (fx < 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  // Report the bracketed endpoint with the smaller residual.
  if (std::abs(flo) <= std::abs(fhi)) return {lo, flo, iters};
  return {hi, fhi, iters};
}

}  // namespace nlcap
