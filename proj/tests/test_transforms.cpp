#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "retrialq/asymptotics.hpp"
#include "retrialq/errors.hpp"
#include "retrialq/quadrature.hpp"
#include "retrialq/transforms.hpp"

using namespace retrialq;

namespace {

QueueModel burr_canonical(double mu = 1.0) {
  return QueueModel(0.5, mu, ServiceModel::burr(2.0, 3.0, 1.0));
}

QueueModel mm1(double lambda, double nu, double mu) {
  return QueueModel(lambda, mu, ServiceModel::exponential(nu));
}

double negative_binomial_pmf(double r, double p, std::size_t n) {
  const double dn = static_cast<double>(n);
  return std::exp(std::lgamma(dn + r) - std::lgamma(r) - std::lgamma(dn + 1.0) +
                  r * std::log1p(-p) + dn * std::log(p));
}

}  // namespace

TEST_CASE("service LST: exponential closed form and normalization") {
  const auto ex = ServiceModel::exponential(1.0);
  CHECK(lst_service(ex, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lst_service(ex, 0.0) == 1.0);
  const auto burr = ServiceModel::burr(2.0, 3.0, 1.0);
  CHECK(lst_service(burr, 0.0) == 1.0);
  const double b1 = lst_service(burr, 1.0);
  CHECK(b1 > 0.0);
  CHECK(b1 < 1.0);
}

TEST_CASE("service LST vs an independent equilibrium-transform route") {
  // beta(s) = 1 - beta1 s be(s), with be(s) evaluated by integrating the
  // equilibrium tail directly (not through the shared tail integral).
  const auto burr = ServiceModel::burr(2.0, 3.0, 1.0);
  for (double s : {0.25, 1.0, 3.0}) {
    const double be_indep =
        1.0 - s * integrate_upper(
                      [&burr, s](double t) {
                        return std::exp(-s * t) * burr.equilibrium_tail(t);
                      },
                      0.0, 2.0, {.rel_tol = 1e-12});
    CHECK(lst_service(burr, s) ==
          doctest::Approx(1.0 - burr.mean() * s * be_indep).epsilon(1e-10));
    CHECK(lst_service_equilibrium(burr, s) ==
          doctest::Approx(be_indep).epsilon(1e-10));
  }
}

TEST_CASE("geometric-compound LST") {
  const auto model = mm1(0.5, 1.0, 0.5);  // rho = 0.5
  CHECK(lst_geometric_compound(model, 0.0) == 1.0);
  // exponential: kappa(s) = (1-rho) nu / ((1-rho) nu + s)
  for (double s : {0.1, 1.0, 4.0})
    CHECK(lst_geometric_compound(model, s) ==
          doctest::Approx(0.5 / (0.5 + s)).epsilon(1e-11));

  // small-s slope equals beta2 / (2 beta1 (1-rho))
  const auto burr = burr_canonical();
  const double s = 1e-6;
  const double slope = (1.0 - lst_geometric_compound(burr, s)) / s;
  CHECK(slope == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("wait LST combines the atom and the compound") {
  const auto model = burr_canonical();
  for (double s : {0.0, 0.5, 2.0})
    CHECK(lst_wait(model, s) ==
          doctest::Approx(0.5 + 0.5 * lst_geometric_compound(model, s))
              .epsilon(1e-14));
}

TEST_CASE("orbit-time LST: closed form for exponential service") {
  // tau(s) = ((1-rho) nu / ((1-rho) nu + s))^{lambda/mu}
  for (double mu : {0.5, 0.25}) {
    const auto model = mm1(0.5, 1.0, mu);
    const double exponent = 0.5 / mu;
    CHECK(lst_orbit_time(model, 0.0) == 1.0);
    for (double s : {0.2, 1.0, 5.0})
      CHECK(lst_orbit_time(model, s) ==
            doctest::Approx(std::pow(0.5 / (0.5 + s), exponent)).epsilon(1e-10));
  }
  // nonincreasing on a grid; degenerate at mu = inf
  const auto burr = burr_canonical();
  double prev = 1.0;
  for (double s : {0.0, 0.3, 1.0, 3.0, 10.0}) {
    const double v = lst_orbit_time(burr, s);
    CHECK(v <= prev + 1e-14);
    prev = v;
  }
  const QueueModel no_retrial(0.5, QueueModel::kNoRetrial,
                              ServiceModel::burr(2.0, 3.0, 1.0));
  CHECK(lst_orbit_time(no_retrial, 2.0) == 1.0);
}

TEST_CASE("compound and orbit-time LSTs look completely monotone") {
  // Alternating finite differences up to third order on an even grid:
  // a completely monotone function has (-1)^m diff^m >= 0.
  const auto model = burr_canonical();
  for (auto* lst : {&lst_geometric_compound, &lst_orbit_time}) {
    std::vector<double> v;
    for (int k = 0; k <= 8; ++k) v.push_back((*lst)(model, 0.1 + 0.25 * k));
    for (int m = 1; m <= 3; ++m) {
      for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
      v.pop_back();
      for (double d : v) CHECK(d * (m % 2 == 1 ? -1.0 : 1.0) >= -1e-10);
    }
  }
}

TEST_CASE("mixed-Poisson pmf: geometric closed form") {
  const auto td = to_time_distribution(ServiceModel::exponential(1.0));
  const auto c = mixed_poisson_pmf(1.0, td, 40);
  for (std::size_t n = 0; n <= 40; ++n)
    CHECK(c[n] == doctest::Approx(std::pow(0.5, n + 1.0)).epsilon(1e-12));
}

TEST_CASE("mixed-Poisson tail agrees with the pmf prefix") {
  const auto td = to_time_distribution(ServiceModel::burr(2.0, 3.0, 1.0));
  const auto c = mixed_poisson_pmf(0.5, td, 64);
  for (long long j : {0LL, 3LL, 10LL, 40LL}) {
    const double tail = mixed_poisson_tail(0.5, td, j);
    const double prefix = 1.0 - c.partial_sum(static_cast<std::size_t>(j));
    CHECK(tail == doctest::Approx(prefix).epsilon(1e-10));
  }
}

TEST_CASE("mixed-Poisson tail of a synthetic power tail") {
  // tail(t) = min(1, 1/t), lambda = 1. Splitting the defining integral at 1:
  // P{N_T > j} = P(j+1,1) + (1 - P(j,1)) / j with P the regularized lower
  // incomplete gamma at x=1, computed here by its recurrence
  // P(j+1,1) = P(j,1) - e^-1/j!.
  TimeDistribution td;
  td.tail = [](double t) { return std::min(1.0, 1.0 / t); };
  td.scale = 1.0;
  td.breaks = {1.0};
  // P(a, 1) = e^-1 sum_{k>=a} 1/k! by direct series.
  auto lower_reg = [](long long a) {
    double term = std::exp(-1.0);
    for (long long k = 1; k <= a; ++k) term /= static_cast<double>(k);
    double sum = 0.0;
    for (int it = 0; it < 60; ++it) {
      sum += term;
      term /= static_cast<double>(a + 1 + it);
    }
    return sum;
  };
  for (long long j : {2LL, 5LL, 10LL}) {
    const double expect =
        lower_reg(j + 1) + (1.0 - lower_reg(j)) / static_cast<double>(j);
    CHECK(mixed_poisson_tail(1.0, td, j) ==
          doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("non-retrial count pmf: M/M/1 geometric oracle") {
  const auto model = mm1(0.5, 1.0, 0.5);
  const auto pmf = pmf_nonretrial_count(model, 64);
  double sup = 0.0;
  for (std::size_t n = 0; n <= 50; ++n)
    sup = std::max(sup, std::abs(pmf[n] - 0.5 * std::pow(0.5, n)));
  CHECK(sup <= 1e-10);
}

TEST_CASE("empty-system probability equals 1 - rho for every stable model") {
  const std::vector<QueueModel> models = {
      burr_canonical(),
      QueueModel(0.3, 1.0, ServiceModel::hall_weiss(3.0, -1.0)),
      QueueModel(0.6, 2.0, ServiceModel::student_t(3.0)),
      mm1(0.5, 1.0, 0.5)};
  for (const auto& m : models) {
    const auto pmf = pmf_nonretrial_count(m, 8);
    CHECK(pmf[0] == doctest::Approx(1.0 - m.rho()).epsilon(1e-10));
  }
}

TEST_CASE("non-retrial count partial sum nearly exhausts the mass") {
  const auto pmf = pmf_nonretrial_count(burr_canonical(), 2000);
  CHECK(pmf.partial_sum(2000) >= 0.999);
}

TEST_CASE("orbit pmf: negative binomial oracles") {
  for (double mu : {0.5, 0.25}) {
    const auto model = mm1(0.5, 1.0, mu);
    const double r = 0.5 / mu;
    const auto pmf = pmf_orbit_given_idle(model, 64);
    double sup = 0.0;
    for (std::size_t n = 0; n <= 50; ++n)
      sup = std::max(sup, std::abs(pmf[n] - negative_binomial_pmf(r, 0.5, n)));
    CHECK(sup <= 1e-10);
    CHECK(pmf[0] > 0.0);
  }
  const QueueModel no_retrial(0.5, QueueModel::kNoRetrial,
                              ServiceModel::burr(2.0, 3.0, 1.0));
  const auto degenerate = pmf_orbit_given_idle(no_retrial, 8);
  CHECK(degenerate[0] == 1.0);
  CHECK(degenerate[3] == 0.0);
}

TEST_CASE("total count pmf: closed form and decomposition") {
  // exponential nu=1, lambda=mu=0.5: NegBin(2, 0.5), pmf (n+1) 0.5^{n+2}
  const auto model = mm1(0.5, 1.0, 0.5);
  const auto total = pmf_total_count(model, 64);
  for (std::size_t n = 0; n <= 40; ++n)
    CHECK(total[n] ==
          doctest::Approx((n + 1.0) * std::pow(0.5, n + 2.0)).epsilon(1e-9));

  // product form at order 256 for the heavy-tailed model
  const auto heavy = burr_canonical();
  const auto a = pmf_nonretrial_count(heavy, 256);
  const auto b = pmf_orbit_given_idle(heavy, 256);
  const auto c = pmf_total_count(heavy, 256);
  double sup = 0.0;
  for (std::size_t j = 0; j <= 256; ++j) {
    double conv = 0.0;
    for (std::size_t k = 0; k <= j; ++k) conv += a[k] * b[j - k];
    sup = std::max(sup, std::abs(conv - c[j]));
  }
  CHECK(sup <= 1e-12);
  CHECK(c[0] == doctest::Approx(a[0] * b[0]).epsilon(1e-13));

  // mu = inf collapses to the non-retrial law
  const QueueModel no_retrial(0.5, QueueModel::kNoRetrial,
                              ServiceModel::burr(2.0, 3.0, 1.0));
  const auto collapsed = pmf_total_count(no_retrial, 32);
  const auto non_retrial = pmf_nonretrial_count(no_retrial, 32);
  for (std::size_t n = 0; n <= 32; ++n)
    CHECK(collapsed[n] == non_retrial[n]);
}

TEST_CASE("pmf series are nonnegative with bounded partial sums") {
  const auto model = burr_canonical();
  for (const auto& series :
       {pmf_nonretrial_count(model, 512), pmf_orbit_given_idle(model, 512),
        pmf_total_count(model, 512)}) {
    double run = 0.0;
    for (std::size_t n = 0; n <= series.order(); ++n) {
      CHECK(series[n] >= -1e-12);
      run += series[n];
      CHECK(run <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("tail_from_pmf") {
  std::vector<double> geo(33);
  for (std::size_t n = 0; n < geo.size(); ++n) geo[n] = std::pow(0.5, n + 1.0);
  const CoefficientSeries series(geo);
  const auto est = tail_from_pmf(series, 3);
  CHECK(est.value == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(est.provenance == Provenance::kExactSeries);
  CHECK(tail_from_pmf(series, series.order() - 1).value >= 0.0);
  CHECK_THROWS_AS(tail_from_pmf(series, series.order()), IndexBeyondTruncation);

  // truncation uncertainty tracks the fitted power tail
  const auto heavy = pmf_total_count(burr_canonical(), 512);
  const auto deep = tail_from_pmf(heavy, 500);
  CHECK(deep.uncertainty > 0.0);
  CHECK(deep.uncertainty < 1e-4);
  // near the truncation edge the tail is dominated by the missing mass
  CHECK(tail_from_pmf(heavy, 511).value <= 10.0 * deep.uncertainty);
}

TEST_CASE("orbit tail approaches the first-order time-tail equivalence") {
  const auto model = burr_canonical();
  const auto orbit = pmf_orbit_given_idle(model, 512);
  double prev_gap = std::numeric_limits<double>::infinity();
  double ratio = 0.0;
  for (std::size_t j : {50UL, 100UL, 200UL, 400UL}) {
    const double t = static_cast<double>(j) / model.lambda();
    ratio = tail_from_pmf(orbit, j).value / tail_orbit_time_asym(model, t).value;
    const double gap = std::abs(ratio - 1.0);
    CHECK(gap <= prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(ratio >= 0.7);
  CHECK(ratio <= 1.3);
}

TEST_CASE("series CSV dump") {
  const auto model = mm1(0.5, 1.0, 0.5);
  const auto pmf = pmf_nonretrial_count(model, 4);
  std::ostringstream a, b;
  write_series_csv(a, pmf, "model=mm1 lambda=0.5");
  write_series_csv(b, pmf, "model=mm1 lambda=0.5");
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 2) == "# ");
  CHECK(a.str().find("n,pmf,cdf\n") != std::string::npos);
  CHECK(a.str().find("\n0,0.5") != std::string::npos);
}
