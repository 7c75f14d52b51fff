#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "retrialq/queue_model.hpp"
#include "retrialq/series.hpp"
#include "retrialq/tail_estimate.hpp"

namespace retrialq {

/// A nonnegative time distribution as the quadrature layer consumes it.
/// `breaks` lists interior kink/jump points of the integrands (e.g. the
/// HallWeiss support edge at t = 1).
struct TimeDistribution {
  std::function<double(double)> density;
  std::function<double(double)> tail;
  double scale = 1.0;
  std::vector<double> breaks{};
};

TimeDistribution to_time_distribution(const ServiceModel& model);

/// Laplace-Stieltjes transform of the service time, evaluated through the
/// tail-integration form 1 - s * int e^{-st} tail(t) dt (no cancellation for
/// small s); exactly 1 at s = 0.
double lst_service(const ServiceModel& model, double s);

/// LST of the equilibrium (integrated-tail) distribution of the service time.
double lst_service_equilibrium(const ServiceModel& model, double s);

/// LST of the geometric compound of equilibrium service times:
/// (1-rho) be(s) / (1 - rho be(s)); 1 at s = 0.
double lst_geometric_compound(const QueueModel& model, double s);

/// LST of the stationary wait: 1 - rho + rho * lst_geometric_compound.
double lst_wait(const QueueModel& model, double s);

/// LST of the random time whose Poisson count is the conditional orbit size:
/// exp(-psi int_0^s kappa(u) du). Identically 1 when mu = inf.
double lst_orbit_time(const QueueModel& model, double s);

/// pmf of N_T, a Poisson(lambda) count over an independent time T, for
/// n = 0..order; one quadrature per coefficient with the kernel evaluated in
/// log space.
CoefficientSeries mixed_poisson_pmf(double lambda, const TimeDistribution& dist,
                                    std::size_t order);

/// P{N_T > j} by quadrature of the Erlang(j+1, lambda) density against the
/// tail of T. Consistent with mixed_poisson_pmf: equals 1 - sum_{n<=j} c_n.
double mixed_poisson_tail(double lambda, const TimeDistribution& dist, long long j);

/// pmf of the customer count in the non-retrial system, by series division of
/// (1-rho)(1-z)B(z) by (B(z) - z) where B is the service mixed-Poisson pmf.
CoefficientSeries pmf_nonretrial_count(const QueueModel& model, std::size_t order);

/// pmf of the orbit size conditioned on an idle server, by series exp of
/// (lambda/mu) int_1^z (1-B(u))/(B(u)-u) du. Degenerate at 0 when mu = inf.
CoefficientSeries pmf_orbit_given_idle(const QueueModel& model, std::size_t order);

/// pmf of the total customer count: convolution of the two laws above
/// (their independence decomposition); reduces to the non-retrial pmf at
/// mu = inf.
CoefficientSeries pmf_total_count(const QueueModel& model, std::size_t order);

/// P{X > j} = 1 - sum_{n<=j} c_n, clamped to [0,1], with a truncation
/// uncertainty estimated from the fitted power tail of the coefficients.
TailEstimate tail_from_pmf(const CoefficientSeries& series, std::size_t j);

/// CSV dump `n,pmf,cdf` with 17-significant-digit decimals; `manifest` goes
/// into a leading comment line.
void write_series_csv(std::ostream& out, const CoefficientSeries& series,
                      const std::string& manifest);

}  // namespace retrialq
