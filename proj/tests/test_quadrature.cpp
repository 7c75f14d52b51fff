#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "retrialq/quadrature.hpp"

using namespace retrialq;

TEST_CASE("polynomial and exponential integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 30.0) ==
        doctest::Approx(1.0 - std::exp(-30.0)).epsilon(1e-13));
}

TEST_CASE("kinked integrand needs the break point") {
  auto f = [](double x) { return std::abs(x - 1.0); };
  const double pts[3] = {0.0, 1.0, 2.0};
  CHECK(integrate_segments(f, pts) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tail transform reproduces power-law integrals") {
  // int_1^inf t^-3 dt = 1/2
  CHECK(integrate_tail([](double t) { return std::pow(t, -3.0); }, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // int_2^inf t^-2.5 dt = 2^-1.5 / 1.5
  CHECK(integrate_tail([](double t) { return std::pow(t, -2.5); }, 2.0) ==
        doctest::Approx(std::pow(2.0, -1.5) / 1.5).epsilon(1e-12));
}

TEST_CASE("semi-infinite split covers exponential decay") {
  for (double s : {0.1, 1.0, 10.0}) {
    const double got =
        integrate_upper([s](double t) { return std::exp(-s * t); }, 0.0, 1.0 / s);
    CHECK(got == doctest::Approx(1.0 / s).epsilon(1e-12));
  }
}

TEST_CASE("narrow spike away from the origin") {
  // Standard normal bump centered at 100, integrated over break points.
  auto f = [](double t) {
    const double z = t - 100.0;
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  };
  const double pts[] = {0.0, 90.0, 100.0, 110.0, 200.0};
  CHECK(integrate_segments(f, pts) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heavy-tail times poisson-like kernel") {
  // int_0^inf e^-t t^4/4! (1+t/2)^-4 dt has no elementary form; compare two
  // independent splits of the domain.
  auto f = [](double t) {
    return std::exp(-t + 4.0 * std::log(t) - std::lgamma(5.0)) *
           std::pow(1.0 + 0.5 * t, -4.0);
  };
  const double a = integrate(f, 0.0, 40.0) + integrate_tail(f, 40.0);
  const double b = integrate(f, 0.0, 7.0) + integrate_tail(f, 7.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-11));
}
