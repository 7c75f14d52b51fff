#include "retrialq/series.hpp"

#include <cmath>
#include <stdexcept>

#include "retrialq/errors.hpp"

namespace retrialq {

CoefficientSeries::CoefficientSeries(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("CoefficientSeries: need at least c_0");
}

CoefficientSeries CoefficientSeries::zeros(std::size_t order) {
  return CoefficientSeries(std::vector<double>(order + 1, 0.0));
}

CoefficientSeries CoefficientSeries::one(std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = 1.0;
  return CoefficientSeries(std::move(c));
}

double CoefficientSeries::partial_sum(std::size_t j) const {
  if (j >= coeffs_.size())
    throw IndexBeyondTruncation("partial_sum: index beyond truncation order");
  double sum = 0.0, comp = 0.0;  // Kahan
  for (std::size_t n = 0; n <= j; ++n) {
    const double y = coeffs_[n] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double CoefficientSeries::evaluate(double z) const {
  double acc = 0.0;
  for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * z + coeffs_[n];
  return acc;
}

namespace {

std::size_t common_order(const CoefficientSeries& a, const CoefficientSeries& b) {
  return std::min(a.order(), b.order());
}

void guard(double c) {
  if (!(std::abs(c) <= kDivergenceGuardThreshold))
    throw DivergenceGuard("series coefficients exceeded the runaway threshold");
}

}  // namespace

CoefficientSeries add(const CoefficientSeries& a, const CoefficientSeries& b) {
  const std::size_t n = common_order(a, b);
  std::vector<double> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] + b[i];
  return CoefficientSeries(std::move(c));
}

CoefficientSeries subtract(const CoefficientSeries& a, const CoefficientSeries& b) {
  const std::size_t n = common_order(a, b);
  std::vector<double> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] - b[i];
  return CoefficientSeries(std::move(c));
}

CoefficientSeries scale(const CoefficientSeries& a, double factor) {
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  for (double& x : c) x *= factor;
  return CoefficientSeries(std::move(c));
}

CoefficientSeries multiply(const CoefficientSeries& a, const CoefficientSeries& b) {
  const std::size_t n = common_order(a, b);
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t k = 0; i + k <= n; ++k) c[i + k] += ai * b[k];
  }
  return CoefficientSeries(std::move(c));
}

CoefficientSeries divide(const CoefficientSeries& num, const CoefficientSeries& den) {
  if (den[0] == 0.0)
    throw std::invalid_argument("series divide: den[0] must be nonzero");
  const std::size_t n = common_order(num, den);
  std::vector<double> q(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    double acc = num[i];
    for (std::size_t k = 1; k <= i; ++k) acc -= den[k] * q[i - k];
    q[i] = acc / den[0];
    guard(q[i]);
  }
  return CoefficientSeries(std::move(q));
}

CoefficientSeries exp(const CoefficientSeries& f) {
  const std::size_t n = f.order();
  std::vector<double> e(n + 1, 0.0);
  e[0] = std::exp(f[0]);
  for (std::size_t i = 1; i <= n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= i; ++k)
      acc += static_cast<double>(k) * f[k] * e[i - k];
    e[i] = acc / static_cast<double>(i);
    guard(e[i]);
  }
  return CoefficientSeries(std::move(e));
}

CoefficientSeries integrate(const CoefficientSeries& f) {
  const std::size_t n = f.order();
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i)
    g[i] = f[i - 1] / static_cast<double>(i);
  return CoefficientSeries(std::move(g));
}

}  // namespace retrialq
