#include "retrialq/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "retrialq/errors.hpp"

namespace retrialq {

RegimeTag regime_of(const TailExpansionParams& params) {
  if (params.h == 1.0) return RegimeTag::kHEquals1;
  return params.h < 1.0 ? RegimeTag::kHLess1 : RegimeTag::kHGreater1;
}

double TwoTermExpansion::first_term(double j) const {
  return c1 * std::pow(j, e1);
}

double TwoTermExpansion::second_term(double j) const {
  return (c2_const + c2_slow * l0(j)) * std::pow(j, e2);
}

double TwoTermExpansion::value(double j, int order) const {
  if (order == 1) return first_term(j);
  if (order == 2) return first_term(j) + second_term(j);
  throw std::invalid_argument("TwoTermExpansion: order must be 1 or 2");
}

double TwoTermExpansion::c2() const {
  return c2_const + c2_slow * l0.constant_value();
}

ModelConstants constants(const QueueModel& model) {
  return {model.rho(), model.psi(), model.c_kappa()};
}

TwoTermExpansion queue_length_expansion(const QueueModel& model) {
  const auto p = model.service().tail_params();
  if (!(p.a > 2.0))
    throw SecondOrderUnavailable("queue_length_expansion: requires a > 2");
  const double lambda = model.lambda();
  const double rho = model.rho();
  const double one_minus = 1.0 - rho;
  const double beta2 = model.service().second_moment();
  const double la = std::pow(lambda, p.a);

  TwoTermExpansion ex;
  ex.c1 = la * p.r1 / ((p.a - 1.0) * one_minus);
  ex.e1 = -p.a + 1.0;
  ex.l0 = p.l0;

  // Retrial contribution lambda r1 / (a mu (1-rho)^2); vanishes at mu = inf.
  const double retrial_term =
      model.has_retrial()
          ? lambda * p.r1 / (p.a * model.mu() * one_minus * one_minus)
          : 0.0;

  switch (regime_of(p)) {
    case RegimeTag::kHEquals1:
      ex.c2_const = la * ((p.a - 4.0) * p.r1 / (2.0 * one_minus) + p.r1 +
                          retrial_term +
                          lambda * lambda * beta2 * p.r1 / (one_minus * one_minus));
      ex.c2_slow = la * lambda * p.r2 / (p.a * one_minus);
      ex.e2 = -p.a;
      ex.l0_in_second = false;
      break;
    case RegimeTag::kHLess1:
      ex.c2_const = 0.0;
      ex.c2_slow = std::pow(lambda, p.a + p.h) * p.r2 /
                   ((p.a + p.h - 1.0) * one_minus);
      ex.e2 = -p.a - p.h + 1.0;
      ex.l0_in_second = true;
      break;
    case RegimeTag::kHGreater1:
      ex.c2_const = la * ((p.a - 4.0) * p.r1 / (2.0 * one_minus) + p.r1 +
                          retrial_term +
                          lambda * lambda * beta2 * p.r1 / (one_minus * one_minus));
      ex.c2_slow = 0.0;
      ex.e2 = -p.a;
      ex.l0_in_second = false;
      break;
  }
  return ex;
}

TailEstimate tail_queue_length_asym(const QueueModel& model, double j,
                                    int order) {
  if (!(j >= 1.0))
    throw std::domain_error("tail_queue_length_asym: j must be >= 1");
  const auto ex = queue_length_expansion(model);
  return {ex.value(j, order),
          order == 1 ? Provenance::kAsymptoticOrder1
                     : Provenance::kAsymptoticOrder2,
          0.0};
}

TailEstimate tail_orbit_time_asym(const QueueModel& model, double t) {
  if (!(t > 0.0)) throw std::domain_error("tail_orbit_time_asym: t must be > 0");
  const auto p = model.service().tail_params();
  if (!model.has_retrial()) return {0.0, Provenance::kAsymptoticOrder1, 0.0};
  const double value = (1.0 - 1.0 / p.a) * model.c_kappa() * model.psi() *
                       std::pow(t, -p.a) * p.slowly_varying_at(t);
  return {value, Provenance::kAsymptoticOrder1, 0.0};
}

namespace {

void require_second_order(const TailExpansionParams& p, const char* who) {
  if (!(p.a > 2.0))
    throw SecondOrderUnavailable(std::string(who) + ": requires a > 2");
}

// Equilibrium-integral expansion int_t^inf tail = r1 t^{1-a}/(a-1)
// + r2 t^{1-a-h} L0(t)/(a+h-1).
double equilibrium_integral_expansion(const TailExpansionParams& p, double t) {
  return p.r1 * std::pow(t, 1.0 - p.a) / (p.a - 1.0) +
         p.r2 * std::pow(t, 1.0 - p.a - p.h) * p.l0(t) / (p.a + p.h - 1.0);
}

}  // namespace

TailEstimate tail_geometric_compound_2nd(const QueueModel& model, double t) {
  if (!(t > 0.0))
    throw std::domain_error("tail_geometric_compound_2nd: t must be > 0");
  const auto p = model.service().tail_params();
  require_second_order(p, "tail_geometric_compound_2nd");
  const double rho = model.rho();
  const double beta1 = model.service().mean();
  const double beta2 = model.service().second_moment();
  const double first =
      equilibrium_integral_expansion(p, t) / ((1.0 - rho) * beta1);
  const double second = rho * beta2 /
                        ((1.0 - rho) * (1.0 - rho) * beta1 * beta1) *
                        model.service().tail(t);
  return {first + second, Provenance::kAsymptoticOrder2, 0.0};
}

TailEstimate tail_wait_2nd(const QueueModel& model, double t) {
  if (!(t > 0.0)) throw std::domain_error("tail_wait_2nd: t must be > 0");
  const auto p = model.service().tail_params();
  require_second_order(p, "tail_wait_2nd");
  const double lambda = model.lambda();
  const double rho = model.rho();
  const double one_minus = 1.0 - rho;
  const double beta2 = model.service().second_moment();
  const double first =
      lambda * p.r1 * std::pow(t, 1.0 - p.a) / ((p.a - 1.0) * one_minus);
  double second = 0.0;
  switch (regime_of(p)) {
    case RegimeTag::kHEquals1:
      second = (lambda * lambda * beta2 * p.r1 / (one_minus * one_minus) +
                lambda * p.r2 * p.l0(t) / (p.a * one_minus)) *
               std::pow(t, -p.a);
      break;
    case RegimeTag::kHLess1:
      second = lambda * p.r2 * std::pow(t, 1.0 - p.a - p.h) * p.l0(t) /
               ((p.a + p.h - 1.0) * one_minus);
      break;
    case RegimeTag::kHGreater1:
      second = lambda * lambda * beta2 * p.r1 / (one_minus * one_minus) *
               std::pow(t, -p.a);
      break;
  }
  return {first + second, Provenance::kAsymptoticOrder2, 0.0};
}

TailEstimate tail_total_sojourn_2nd(const QueueModel& model, double t) {
  if (!(t > 0.0))
    throw std::domain_error("tail_total_sojourn_2nd: t must be > 0");
  const auto p = model.service().tail_params();
  require_second_order(p, "tail_total_sojourn_2nd");
  const double wait = tail_wait_2nd(model, t).value;
  if (regime_of(p) == RegimeTag::kHLess1)
    return {wait, Provenance::kAsymptoticOrder2, 0.0};
  // Service + orbit-time contribution r1 (1 + lambda/(a mu (1-rho)^2)) t^-a.
  const double one_minus = 1.0 - model.rho();
  const double retrial_term =
      model.has_retrial()
          ? model.lambda() / (p.a * model.mu() * one_minus * one_minus)
          : 0.0;
  const double extra = p.r1 * (1.0 + retrial_term) * std::pow(t, -p.a);
  return {wait + extra, Provenance::kAsymptoticOrder2, 0.0};
}

double gamma_ratio(double x, double d, EvalMode mode) {
  if (!(d > 0.0)) throw std::domain_error("gamma_ratio: d must be > 0");
  if (!(x > d)) throw std::domain_error("gamma_ratio: requires x > d");
  if (mode == EvalMode::kExact)
    return std::exp(std::lgamma(x - d) - std::lgamma(x));
  return std::pow(x, -d) + 0.5 * d * (d + 1.0) * std::pow(x, -d - 1.0);
}

double mixed_poisson_power_tail(double lambda, double d, long long j,
                                EvalMode mode) {
  if (!(lambda > 0.0))
    throw std::domain_error("mixed_poisson_power_tail: lambda must be > 0");
  if (!(d > 0.0)) throw std::domain_error("mixed_poisson_power_tail: d must be > 0");
  const double dj = static_cast<double>(j);
  if (!(dj + 2.0 > d))
    throw std::domain_error("mixed_poisson_power_tail: requires j + 2 > d");
  const double ld = std::pow(lambda, d);
  if (mode == EvalMode::kExact)
    return ld * std::exp(std::lgamma(dj + 2.0 - d) - std::lgamma(dj + 2.0));
  return ld * (std::pow(dj, -d) + 0.5 * d * (d - 3.0) * std::pow(dj, -d - 1.0));
}

double slowly_varying_mixture_tail(double lambda, double d,
                                   const SlowlyVarying& l0, double j) {
  if (!(j >= 1.0))
    throw std::domain_error("slowly_varying_mixture_tail: j must be >= 1");
  return std::pow(lambda, d) * std::pow(j, -d) * l0(j);
}

}  // namespace retrialq
