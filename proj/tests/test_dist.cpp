#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "retrialq/errors.hpp"
#include "retrialq/quadrature.hpp"
#include "retrialq/rng.hpp"
#include "retrialq/service_model.hpp"

using namespace retrialq;

namespace {

std::vector<ServiceModel> assumption_families() {
  return {ServiceModel::burr(2.0, 3.0, 1.0), ServiceModel::hall_weiss(3.0, -1.0),
          ServiceModel::student_t(3.0)};
}

// Quadrature oracles for the moments, independent of the closed forms:
// beta1 = int tail, beta2 = int 2 t tail.
double beta1_quadrature(const ServiceModel& m) {
  return integrate_upper([&m](double t) { return m.tail(t); }, 0.0,
                         std::max(m.scale(), 1.0), {.rel_tol = 1e-12});
}

double beta2_quadrature(const ServiceModel& m) {
  return integrate_upper([&m](double t) { return 2.0 * t * m.tail(t); }, 0.0,
                         std::max(m.scale(), 1.0), {.rel_tol = 1e-12});
}

}  // namespace

TEST_CASE("tail closed forms") {
  const auto burr = ServiceModel::burr(2.0, 3.0, 1.0);
  CHECK(burr.tail(0.0) == 1.0);
  CHECK(burr.tail(2.0) == doctest::Approx(0.125).epsilon(1e-15));

  const auto hw = ServiceModel::hall_weiss(3.0, -1.0);
  CHECK(hw.tail(0.5) == 1.0);
  CHECK(hw.tail(2.0) == doctest::Approx(0.09375).epsilon(1e-15));

  const auto st = ServiceModel::student_t(3.0);
  CHECK(st.tail(0.0) == 1.0);

  const auto ex = ServiceModel::exponential(2.0);
  CHECK(ex.tail(1.0) == doctest::Approx(std::exp(-2.0)));

  for (const auto& m : assumption_families()) {
    CHECK(m.cdf(0.0) == 0.0);
    double prev = 1.0 + 1e-15;
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0, 1e3}) {
      const double v = m.tail(t);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("tail expansion parameters") {
  const auto pb = ServiceModel::burr(2.0, 3.0, 1.0).tail_params();
  CHECK(pb.a == 3.0);
  CHECK(pb.h == 1.0);
  CHECK(pb.r1 == doctest::Approx(8.0));
  CHECK(pb.r2 == doctest::Approx(-48.0));
  CHECK(pb.l0.constant_value() == 1.0);

  const auto ph = ServiceModel::hall_weiss(3.0, -1.0).tail_params();
  CHECK(ph.a == 3.0);
  CHECK(ph.h == 1.0);
  CHECK(ph.r1 == doctest::Approx(0.5));
  CHECK(ph.r2 == doctest::Approx(0.5));

  // Folded Student-t: coefficients are twice the one-sided constants.
  const double v = 3.0;
  const double c = std::exp(std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v) -
                            0.5 * std::log(v * M_PI));
  const auto ps = ServiceModel::student_t(v).tail_params();
  CHECK(ps.a == 3.0);
  CHECK(ps.h == 2.0);
  CHECK(ps.r1 ==
        doctest::Approx(2.0 * c * std::pow(v, 0.5 * (v + 1.0)) / v).epsilon(1e-14));
  CHECK(ps.r2 == doctest::Approx(-c * std::pow(v, 0.5 * (v + 1.0)) * v *
                                 (v + 1.0) / (v + 2.0))
                     .epsilon(1e-14));

  CHECK_THROWS_AS(ServiceModel::exponential(1.0).tail_params(), UnsupportedFamily);
}

TEST_CASE("moments closed forms and quadrature oracle") {
  const auto burr = ServiceModel::burr(2.0, 3.0, 1.0);
  CHECK(burr.mean() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(burr.second_moment() == doctest::Approx(4.0).epsilon(1e-13));

  const auto ex = ServiceModel::exponential(2.0);
  CHECK(ex.mean() == doctest::Approx(0.5));
  CHECK(ex.second_moment() == doctest::Approx(0.5));

  const auto hw = ServiceModel::hall_weiss(3.0, -1.0);
  CHECK(hw.mean() == doctest::Approx(17.0 / 12.0).epsilon(1e-14));

  for (const auto& m : {ServiceModel::burr(2.0, 3.0, 1.0),
                        ServiceModel::burr(1.5, 2.0, 1.7),
                        ServiceModel::hall_weiss(3.0, -1.0),
                        ServiceModel::hall_weiss(2.5, -0.5),
                        ServiceModel::student_t(3.0),
                        ServiceModel::student_t(4.5),
                        ServiceModel::exponential(2.0)}) {
    CHECK(m.mean() == doctest::Approx(beta1_quadrature(m)).epsilon(1e-10));
    CHECK(m.second_moment() ==
          doctest::Approx(beta2_quadrature(m)).epsilon(1e-10));
  }
}

TEST_CASE("equilibrium tail") {
  const auto burr = ServiceModel::burr(2.0, 3.0, 1.0);
  CHECK(burr.equilibrium_tail(0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(burr.equilibrium_tail(2.0) == doctest::Approx(0.25).epsilon(1e-13));

  const auto ex = ServiceModel::exponential(1.5);
  for (double t : {0.0, 0.3, 2.0})
    CHECK(ex.equilibrium_tail(t) == doctest::Approx(std::exp(-1.5 * t)));

  // Closed forms against the direct quadrature of the defining integral.
  for (const auto& m : {ServiceModel::hall_weiss(3.0, -1.0),
                        ServiceModel::student_t(3.0),
                        ServiceModel::burr(1.5, 2.0, 1.7)}) {
    for (double t : {0.0, 0.5, 1.5, 4.0, 30.0}) {
      const double oracle =
          integrate_upper([&m](double x) { return m.tail(x); }, t,
                          std::max(m.scale(), 1.0), {.rel_tol = 1e-12}) /
          m.mean();
      CHECK(m.equilibrium_tail(t) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
}

TEST_CASE("quantile round trip on a probability grid") {
  for (const auto& m : {ServiceModel::burr(2.0, 3.0, 1.0),
                        ServiceModel::hall_weiss(3.0, -1.0),
                        ServiceModel::student_t(3.0),
                        ServiceModel::exponential(2.0)}) {
    for (int k = 1; k <= 100; ++k) {
      const double p = static_cast<double>(k) / 101.0;
      CHECK(m.tail(m.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
      CHECK(m.equilibrium_tail(m.equilibrium_quantile(p)) ==
            doctest::Approx(p).epsilon(1e-9));
    }
  }
}

TEST_CASE("sampling inverts the stated examples") {
  const auto burr = ServiceModel::burr(2.0, 3.0, 1.0);
  CHECK(burr.quantile(0.125) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(burr.equilibrium_quantile(0.25) == doctest::Approx(2.0).epsilon(1e-12));
  const auto ex = ServiceModel::exponential(1.0);
  CHECK(ex.quantile(std::exp(-3.0)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("parametric second-order tail trend") {
  for (const auto& m : assumption_families()) {
    const auto p = m.tail_params();
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double t : {10.0, 1e2, 1e3, 1e4}) {
      const double ratio =
          m.tail(t) * std::pow(t, p.a) / p.slowly_varying_at(t);
      last = std::abs(ratio - 1.0);
      CHECK(last <= prev + 1e-12);
      prev = last;
    }
    CHECK(last < 1e-3);
  }
}

TEST_CASE("equilibrium Karamata trend") {
  for (const auto& m :
       {ServiceModel::burr(2.0, 3.0, 1.0), ServiceModel::hall_weiss(3.0, -1.0)}) {
    const auto p = m.tail_params();
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double t : {10.0, 1e2, 1e3, 1e4}) {
      const double ratio = m.equilibrium_tail(t) * std::pow(t, p.a - 1.0) *
                           m.mean() * (p.a - 1.0) / p.r1;
      last = std::abs(ratio - 1.0);
      CHECK(last <= prev + 1e-12);
      prev = last;
    }
    CHECK(last < 0.01);
  }
}

TEST_CASE("monte carlo mean within four standard errors") {
  const std::size_t n = 1'000'000;
  std::uint64_t seed = 7;
  for (const auto& m : {ServiceModel::burr(2.0, 3.0, 1.0),
                        ServiceModel::hall_weiss(3.0, -1.0),
                        ServiceModel::student_t(3.0),
                        ServiceModel::exponential(2.0)}) {
    RngStream rng(seed++);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += m.sample(rng);
    const double mean = acc / static_cast<double>(n);
    const double var = m.second_moment() - m.mean() * m.mean();
    const double se = std::sqrt(var / static_cast<double>(n));
    CHECK(std::abs(mean - m.mean()) <= 4.0 * se);
  }
}

TEST_CASE("parameter validation happens at construction") {
  CHECK_THROWS_AS(ServiceModel::burr(2.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ServiceModel::burr(-1.0, 3.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ServiceModel::hall_weiss(2.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ServiceModel::hall_weiss(3.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ServiceModel::student_t(2.0), std::invalid_argument);
  CHECK_THROWS_AS(ServiceModel::exponential(0.0), std::invalid_argument);
}

TEST_CASE("plain-text model specs") {
  const auto burr = ServiceModel::parse("family=burr b=2 v=3 w=1");
  CHECK(burr.tail(2.0) == doctest::Approx(0.125));
  const auto lomax = ServiceModel::parse("family=lomax b=2 v=3");
  CHECK(lomax.tail(2.0) == doctest::Approx(0.125));
  const auto hw = ServiceModel::parse("family=hallweiss v=3 w=-1");
  CHECK(hw.tail(2.0) == doctest::Approx(0.09375));
  CHECK_NOTHROW(ServiceModel::parse("family=studentt v=3"));
  CHECK_NOTHROW(ServiceModel::parse("family=exp nu=0.5"));

  CHECK_THROWS_AS(ServiceModel::parse("family=weibull k=1"), ConfigError);
  CHECK_THROWS_AS(ServiceModel::parse("family=burr b=2 v=3"), ConfigError);
  CHECK_THROWS_AS(ServiceModel::parse("family=burr b=2 v=3 w=1 x=4"), ConfigError);
  CHECK_THROWS_AS(ServiceModel::parse("family=burr b=2 v=3 w=oops"), ConfigError);
  CHECK_THROWS_AS(ServiceModel::parse("b=2 v=3 w=1"), ConfigError);
  // invalid parameters surface as config errors through parse
  CHECK_THROWS_AS(ServiceModel::parse("family=burr b=2 v=1 w=1"), ConfigError);

  // spec_string round-trips
  for (const auto& m : assumption_families()) {
    const auto again = ServiceModel::parse(m.spec_string());
    for (double t : {0.5, 2.0, 9.0})
      CHECK(again.tail(t) == doctest::Approx(m.tail(t)).epsilon(1e-15));
  }
}
