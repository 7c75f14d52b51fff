#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace retrialq {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_panels = 4000;
};

namespace quad_detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae/weights).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
template <class F>
PanelResult gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    fv[i] = f(center - dx);
    fv[14 - i] = f(center + dx);
  }
  fv[7] = f(center);

  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  double resabs = std::abs(resk);
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  resasc *= half;
  resabs *= half;

  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(err, eps50 * resabs);
  return {resk * half, err};
}

struct Panel {
  double a, b, integral, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace quad_detail

/// Adaptive integral of f over the segments delimited by `points`
/// (strictly increasing). Worst panel is bisected until the summed error
/// estimate meets max(abs_tol, rel_tol * |I|) or the panel budget runs out.
template <class F>
double integrate_segments(F&& f, std::span<const double> points,
                          const QuadratureOptions& opt = {}) {
  std::priority_queue<quad_detail::Panel> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) continue;
    auto r = quad_detail::gk15(f, points[i], points[i + 1]);
    heap.push({points[i], points[i + 1], r.integral, r.error});
    total += r.integral;
    total_err += r.error;
  }
  int panels = static_cast<int>(heap.size());
  while (panels < opt.max_panels && !heap.empty() &&
         total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) continue;  // panel at double resolution
    auto left = quad_detail::gk15(f, worst.a, mid);
    auto right = quad_detail::gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.integral, left.error});
    heap.push({mid, worst.b, right.integral, right.error});
    ++panels;
  }
  return total;
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  const double pts[2] = {a, b};
  return integrate_segments(f, pts, opt);
}

/// Integral of f over [a, inf), a > 0, via the substitution t = a/s which
/// maps the tail onto (0, 1]. Requires f to decay faster than 1/t
/// (integrability); power tails t^{-p} with p > 1 give an integrand
/// ~ s^{p-2} near 0, which the adaptive refinement resolves.
template <class F>
double integrate_tail(F&& f, double a, const QuadratureOptions& opt = {}) {
  auto g = [&f, a](double s) {
    const double t = a / s;
    return f(t) * (t / s);
  };
  return integrate(g, 0.0, 1.0, opt);
}

/// Integral of f over [lo, inf) where `scale` is a characteristic scale of f.
template <class F>
double integrate_upper(F&& f, double lo, double scale,
                       const QuadratureOptions& opt = {}) {
  const double cut = std::max({4.0 * scale, 2.0 * lo, 1e-8});
  if (lo >= cut) return integrate_tail(f, lo, opt);
  return integrate(f, lo, cut, opt) + integrate_tail(f, cut, opt);
}

}  // namespace retrialq
