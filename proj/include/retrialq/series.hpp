#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace retrialq {

/// Truncated power series: coefficients c_0..c_N of order N. Arithmetic is
/// exact modulo rounding on the retained prefix (multiplication, division
/// and exp of order-N inputs determine the order-N output exactly).
/// Immutable value type; shareable across threads.
class CoefficientSeries {
 public:
  explicit CoefficientSeries(std::vector<double> coeffs);
  static CoefficientSeries zeros(std::size_t order);
  static CoefficientSeries one(std::size_t order);

  /// Truncation order N (highest retained exponent).
  std::size_t order() const { return coeffs_.size() - 1; }
  double operator[](std::size_t n) const { return coeffs_[n]; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Compensated partial sum c_0 + ... + c_j.
  double partial_sum(std::size_t j) const;

  double evaluate(double z) const;  // Horner

 private:
  std::vector<double> coeffs_;
};

/// Coefficient magnitudes beyond this trip DivergenceGuard: stable models
/// keep pmf-like coefficients <= 1, so a runaway signals misuse.
inline constexpr double kDivergenceGuardThreshold = 1e6;

CoefficientSeries add(const CoefficientSeries& a, const CoefficientSeries& b);
CoefficientSeries subtract(const CoefficientSeries& a, const CoefficientSeries& b);
CoefficientSeries scale(const CoefficientSeries& a, double factor);

/// Cauchy product truncated to min(order a, order b).
CoefficientSeries multiply(const CoefficientSeries& a, const CoefficientSeries& b);

/// Series quotient; den[0] must be nonzero. Throws DivergenceGuard when a
/// running coefficient exceeds kDivergenceGuardThreshold.
CoefficientSeries divide(const CoefficientSeries& num, const CoefficientSeries& den);

/// exp of the series via the first-order recurrence
/// e_0 = exp(f_0), n e_n = sum_{k=1..n} k f_k e_{n-k}.
CoefficientSeries exp(const CoefficientSeries& f);

/// Termwise antiderivative with constant term 0, same order (the c_N input
/// coefficient falls off the end).
CoefficientSeries integrate(const CoefficientSeries& f);

}  // namespace retrialq
