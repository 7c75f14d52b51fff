#pragma once

#include "retrialq/queue_model.hpp"
#include "retrialq/tail_estimate.hpp"

namespace retrialq {

/// The case split of the two-term queue-length expansion. h is a
/// user-supplied exact parameter, so the comparison with 1 is exact: the
/// regime is a modeling choice, not a measurement.
enum class RegimeTag { kHEquals1, kHLess1, kHGreater1 };

RegimeTag regime_of(const TailExpansionParams& params);

/// Two-term tail expansion c1 j^{e1} + (c2_const + c2_slow L0(j)) j^{e2}.
/// In the h<1 regime the slowly varying factor multiplies the whole second
/// term (c2_const = 0); for h = 1 it enters additively inside the bracket;
/// for h > 1 c2_slow = 0.
struct TwoTermExpansion {
  double c1;
  double e1;
  double c2_const;
  double c2_slow;
  double e2;
  bool l0_in_second;  // true iff the second term is L0-modulated (h < 1)
  SlowlyVarying l0 = SlowlyVarying::constant(1.0);

  double first_term(double j) const;
  double second_term(double j) const;
  double value(double j, int order) const;

  /// Folded constant second coefficient; requires a constant L0.
  double c2() const;
};

struct ModelConstants {
  double rho;
  double psi;
  double c_kappa;
};

ModelConstants constants(const QueueModel& model);

/// Two-term expansion of P{L > j} for the stationary total customer count,
/// per regime of h. Requires a > 2 (SecondOrderUnavailable otherwise).
TwoTermExpansion queue_length_expansion(const QueueModel& model);

/// Evaluates the expansion above at j, to first or second order.
TailEstimate tail_queue_length_asym(const QueueModel& model, double j, int order);

/// First-order tail of the orbit-generating time: (1-1/a) c_kappa psi t^-a L(t)
/// with the full slowly varying part L(t) = r1 + r2 t^-h L0(t). Zero when
/// mu = inf (psi = 0).
TailEstimate tail_orbit_time_asym(const QueueModel& model, double t);

/// Two-term tail of the geometric compound of equilibrium service times:
/// equilibrium integral term plus the density correction
/// rho beta2 /((1-rho)^2 beta1^2) tail(t).
TailEstimate tail_geometric_compound_2nd(const QueueModel& model, double t);

/// Two-term tail of the stationary wait (atom at 0 plus the compound).
TailEstimate tail_wait_2nd(const QueueModel& model, double t);

/// Two-term tail of the total sojourn-like time wait + service + orbit time.
TailEstimate tail_total_sojourn_2nd(const QueueModel& model, double t);

enum class EvalMode { kExact, kAsymptotic2 };

/// Gamma(x-d)/Gamma(x): exact via log-gamma, or the two-term expansion
/// x^-d + d(d+1)/2 x^-d-1. Requires x > d > 0.
double gamma_ratio(double x, double d, EvalMode mode);

/// lambda^d Gamma(j+2-d)/Gamma(j+2) (exact mode) or its two-term expansion
/// lambda^d [j^-d + d(d-3)/2 j^-d-1]. Requires j + 2 > d > 0.
double mixed_poisson_power_tail(double lambda, double d, long long j, EvalMode mode);

/// First-order mixed-Poisson tail with a slowly varying factor:
/// lambda^d j^-d L(j).
double slowly_varying_mixture_tail(double lambda, double d,
                                   const SlowlyVarying& l0, double j);

}  // namespace retrialq
