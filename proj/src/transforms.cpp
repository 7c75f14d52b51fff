#include "retrialq/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "retrialq/errors.hpp"
#include "retrialq/quadrature.hpp"

namespace retrialq {

namespace {

// Integrate f over [lo, inf): explicit panels at the interior break points
// and around `focus` (when given), then the transformed tail beyond `cut`.
template <class F>
double integrate_with_breaks(F&& f, double lo, double cut,
                             const std::vector<double>& breaks,
                             const QuadratureOptions& opt) {
  std::vector<double> pts{lo};
  for (double p : breaks)
    if (p > lo && p < cut) pts.push_back(p);
  pts.push_back(cut);
  std::sort(pts.begin(), pts.end());
  return integrate_segments(f, pts, opt) + integrate_tail(f, cut, opt);
}

constexpr QuadratureOptions kLstOpt{.rel_tol = 1e-13, .abs_tol = 1e-300,
                                    .max_panels = 4000};

double tail_transform_integral(const ServiceModel& model, double s) {
  // int_0^inf e^{-st} tail(t) dt
  auto f = [&model, s](double t) { return std::exp(-s * t) * model.tail(t); };
  const double decay = s > 0.0 ? 1.0 / s : model.scale();
  const double cut = 4.0 * std::max(model.scale(), std::min(decay, 1e6));
  std::vector<double> breaks;
  if (model.family() == ServiceModel::Family::kHallWeiss) breaks.push_back(1.0);
  return integrate_with_breaks(f, 0.0, cut, breaks, kLstOpt);
}

}  // namespace

TimeDistribution to_time_distribution(const ServiceModel& model) {
  TimeDistribution td;
  td.density = [model](double t) { return model.density(t); };
  td.tail = [model](double t) { return model.tail(t); };
  td.scale = model.scale();
  if (model.family() == ServiceModel::Family::kHallWeiss) td.breaks = {1.0};
  return td;
}

double lst_service(const ServiceModel& model, double s) {
  if (s < 0.0) throw std::domain_error("lst_service: s must be >= 0");
  if (s == 0.0) return 1.0;
  return 1.0 - s * tail_transform_integral(model, s);
}

double lst_service_equilibrium(const ServiceModel& model, double s) {
  if (s < 0.0) throw std::domain_error("lst_service_equilibrium: s must be >= 0");
  if (s == 0.0) return 1.0;
  return tail_transform_integral(model, s) / model.mean();
}

double lst_geometric_compound(const QueueModel& model, double s) {
  if (s == 0.0) return 1.0;
  const double be = lst_service_equilibrium(model.service(), s);
  return (1.0 - model.rho()) * be / (1.0 - model.rho() * be);
}

double lst_wait(const QueueModel& model, double s) {
  return 1.0 - model.rho() + model.rho() * lst_geometric_compound(model, s);
}

double lst_orbit_time(const QueueModel& model, double s) {
  if (s < 0.0) throw std::domain_error("lst_orbit_time: s must be >= 0");
  if (!model.has_retrial() || s == 0.0) return 1.0;
  const double integral = integrate(
      [&model](double u) { return lst_geometric_compound(model, u); }, 0.0, s,
      {.rel_tol = 1e-12, .max_panels = 2000});
  return std::exp(-model.psi() * integral);
}

namespace {

constexpr QuadratureOptions kPmfOpt{.rel_tol = 5e-13, .abs_tol = 1e-300,
                                    .max_panels = 800};

// Kernel segmentation: points where e^{-lt}(lt)^n/n! lives, plus the
// distribution's own break points.
std::vector<double> poisson_kernel_points(double lambda, double n,
                                          const TimeDistribution& dist,
                                          double* cut_out) {
  const double peak = n / lambda;
  const double sd = std::sqrt(n + 1.0) / lambda;
  const double cut = peak + 12.0 * sd + 60.0 / lambda;
  std::vector<double> pts{0.0};
  for (double k : {-8.0, -3.0, 0.0, 3.0, 8.0}) {
    const double p = peak + k * sd;
    if (p > 0.0 && p < cut) pts.push_back(p);
  }
  for (double p : dist.breaks)
    if (p > 0.0 && p < cut) pts.push_back(p);
  pts.push_back(cut);
  std::sort(pts.begin(), pts.end());
  *cut_out = cut;
  return pts;
}

}  // namespace

CoefficientSeries mixed_poisson_pmf(double lambda, const TimeDistribution& dist,
                                    std::size_t order) {
  if (!(lambda > 0.0)) throw std::invalid_argument("mixed_poisson_pmf: lambda > 0");
  if (!dist.density)
    throw std::invalid_argument("mixed_poisson_pmf: density required");
  std::vector<double> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    const double dn = static_cast<double>(n);
    const double ln_norm = std::lgamma(dn + 1.0);
    auto integrand = [&, dn, ln_norm](double t) {
      if (t <= 0.0) return 0.0;
      const double ln_kernel =
          dn == 0.0 ? -lambda * t : dn * std::log(lambda * t) - lambda * t - ln_norm;
      return std::exp(ln_kernel) * dist.density(t);
    };
    double cut = 0.0;
    const auto pts = poisson_kernel_points(lambda, dn, dist, &cut);
    c[n] = integrate_segments(integrand, pts, kPmfOpt) +
           integrate_tail(integrand, cut, kPmfOpt);
  }
  return CoefficientSeries(std::move(c));
}

double mixed_poisson_tail(double lambda, const TimeDistribution& dist,
                          long long j) {
  if (!(lambda > 0.0)) throw std::invalid_argument("mixed_poisson_tail: lambda > 0");
  if (j < 0) return 1.0;
  if (!dist.tail)
    throw std::invalid_argument("mixed_poisson_tail: tail required");
  // P{N_T > j} = int erlang_{j+1}(t) tail(t) dt with erlang_{j+1} the density
  // of the (j+1)-th arrival epoch, lambda e^{-lt}(lt)^j/j!.
  const double dj = static_cast<double>(j);
  const double ln_norm = std::lgamma(dj + 1.0);
  auto integrand = [&, dj, ln_norm](double t) {
    if (t <= 0.0) return 0.0;
    const double ln_kernel =
        dj == 0.0 ? -lambda * t : dj * std::log(lambda * t) - lambda * t - ln_norm;
    return lambda * std::exp(ln_kernel) * dist.tail(t);
  };
  double cut = 0.0;
  const auto pts = poisson_kernel_points(lambda, dj, dist, &cut);
  return integrate_segments(integrand, pts, kPmfOpt) +
         integrate_tail(integrand, cut, kPmfOpt);
}

namespace {

CoefficientSeries one_minus_z(std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = 1.0;
  if (order >= 1) c[1] = -1.0;
  return CoefficientSeries(std::move(c));
}

// B(z) - z, the denominator of the Pollaczek-Khinchine form.
CoefficientSeries pk_denominator(const CoefficientSeries& b) {
  std::vector<double> d(b.coeffs().begin(), b.coeffs().end());
  if (d.size() >= 2) d[1] -= 1.0;
  return CoefficientSeries(std::move(d));
}

}  // namespace

CoefficientSeries pmf_nonretrial_count(const QueueModel& model,
                                       std::size_t order) {
  const auto b = mixed_poisson_pmf(model.lambda(),
                                   to_time_distribution(model.service()), order);
  const auto num = scale(multiply(one_minus_z(order), b), 1.0 - model.rho());
  return divide(num, pk_denominator(b));
}

CoefficientSeries pmf_orbit_given_idle(const QueueModel& model,
                                       std::size_t order) {
  if (!model.has_retrial()) return CoefficientSeries::one(order);
  const auto b = mixed_poisson_pmf(model.lambda(),
                                   to_time_distribution(model.service()), order);
  auto num = scale(b, -1.0);
  num = add(num, CoefficientSeries::one(order));           // 1 - B
  const auto g = divide(num, pk_denominator(b));           // (1-B)/(B-z)
  auto antideriv = integrate(g);

  // The constant int_0^1 g(u) du by direct quadrature; the integrand has a
  // removable singularity at u = 1 with limit rho/(1-rho).
  const double rho = model.rho();
  auto integrand = [&model, rho](double u) {
    if (std::abs(1.0 - u) < 1e-6) return rho / (1.0 - rho);
    const double bu = lst_service(model.service(), model.lambda() * (1.0 - u));
    return (1.0 - bu) / (bu - u);
  };
  const double g1 = integrate(integrand, 0.0, 1.0,
                              {.rel_tol = 1e-12, .max_panels = 2000});

  const double rate_ratio = model.lambda() / model.mu();
  std::vector<double> arg(antideriv.coeffs().begin(), antideriv.coeffs().end());
  for (double& x : arg) x *= rate_ratio;
  arg[0] -= rate_ratio * g1;
  return exp(CoefficientSeries(std::move(arg)));
}

CoefficientSeries pmf_total_count(const QueueModel& model, std::size_t order) {
  const auto nonretrial = pmf_nonretrial_count(model, order);
  if (!model.has_retrial()) return nonretrial;
  return multiply(nonretrial, pmf_orbit_given_idle(model, order));
}

TailEstimate tail_from_pmf(const CoefficientSeries& series, std::size_t j) {
  if (j >= series.order())
    throw IndexBeyondTruncation("tail_from_pmf: j must be < truncation order");
  const double raw = 1.0 - series.partial_sum(j);
  const double value = std::clamp(raw, 0.0, 1.0);

  // Missing mass beyond the truncation, from a two-point power-law fit.
  const std::size_t n2 = series.order();
  const std::size_t n1 = std::max<std::size_t>(n2 / 2, 1);
  const double c1 = series[n1];
  const double c2 = series[n2];
  double uncertainty;
  if (!(c2 > 0.0)) {
    uncertainty = 0.0;  // series mass exhausted within the truncation
  } else if (c1 > c2 && n1 < n2) {
    const double alpha = std::log(c1 / c2) /
                         std::log(static_cast<double>(n2) / static_cast<double>(n1));
    uncertainty = alpha > 1.000001
                      ? c2 * static_cast<double>(n2) / (alpha - 1.0)
                      : std::numeric_limits<double>::infinity();
  } else {
    uncertainty = std::numeric_limits<double>::infinity();
  }
  return {value, Provenance::kExactSeries, uncertainty};
}

void write_series_csv(std::ostream& out, const CoefficientSeries& series,
                      const std::string& manifest) {
  out << "# " << manifest << "\n";
  out << "n,pmf,cdf\n";
  char buf[128];
  double cdf = 0.0, comp = 0.0;
  for (std::size_t n = 0; n <= series.order(); ++n) {
    const double y = series[n] - comp;
    const double t = cdf + y;
    comp = (t - cdf) - y;
    cdf = t;
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, series[n], cdf);
    out << buf;
  }
}

}  // namespace retrialq
