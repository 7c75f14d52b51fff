#include "retrialq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "retrialq/root_find.hpp"

namespace retrialq {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("regularized_incomplete_beta: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_tail(double dof, double t) {
  if (!(dof > 0.0)) throw std::domain_error("student_t_tail: dof must be > 0");
  if (t == 0.0) return 0.5;
  const double x = dof / (dof + t * t);
  const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);
  return t > 0.0 ? half_tail : 1.0 - half_tail;
}

double student_t_quantile(double dof, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("student_t_quantile: p must be in (0,1)");
  if (p == 0.5) return 0.0;
  const double tail = 1.0 - p;  // want P{T > q} = 1 - p
  // Symmetric reduction to the upper half.
  const bool flip = tail > 0.5;
  const double target = flip ? 1.0 - tail : tail;  // in (0, 0.5]
  double hi = 2.0;
  while (student_t_tail(dof, hi) > target && hi < 1e12) hi *= 2.0;
  const double ln_c = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                      0.5 * std::log(dof * M_PI);
  const double q = solve_bracketed(
      [dof, target](double t) { return student_t_tail(dof, t) - target; },
      [dof, ln_c](double t) {
        return -std::exp(ln_c - 0.5 * (dof + 1.0) * std::log1p(t * t / dof));
      },
      0.0, hi, 1e-13);
  return flip ? -q : q;
}

}  // namespace retrialq
