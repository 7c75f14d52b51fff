#pragma once

#include <cmath>
#include <stdexcept>

namespace retrialq {

/// Solve f(x) = 0 for continuous f with f(lo) and f(hi) of opposite sign.
/// Newton steps (df optional) safeguarded by bisection; converges to
/// |interval| <= xtol * max(1, |x|) or |f| == 0.
template <class F, class DF>
double solve_bracketed(F&& f, DF&& df, double lo, double hi,
                       double xtol = 1e-13, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("solve_bracketed: root not bracketed");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= xtol * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);
    double next = x - fx / df(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // Newton left the bracket
    x = next;
  }
  return x;
}

template <class F>
double solve_bracketed_bisect(F&& f, double lo, double hi,
                              double xtol = 1e-13, int max_iter = 400) {
  auto no_deriv = [](double) { return 0.0; };
  // with df == 0 every Newton step escapes the bracket, degrading to bisection
  return solve_bracketed(f, no_deriv, lo, hi, xtol, max_iter);
}

}  // namespace retrialq
