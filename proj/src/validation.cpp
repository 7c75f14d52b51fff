#include "retrialq/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "retrialq/asymptotics.hpp"
#include "retrialq/quadrature.hpp"
#include "retrialq/series.hpp"
#include "retrialq/simulator.hpp"
#include "retrialq/transforms.hpp"

namespace retrialq {

namespace {

QueueModel burr_canonical(double mu = 1.0) {
  return QueueModel(0.5, mu, ServiceModel::burr(2.0, 3.0, 1.0));
}

double negative_binomial_pmf(double r, double p, std::size_t n) {
  const double dn = static_cast<double>(n);
  const double ln_choose =
      std::lgamma(dn + r) - std::lgamma(r) - std::lgamma(dn + 1.0);
  return std::exp(ln_choose + r * std::log1p(-p) + dn * std::log(p));
}

// --- independent reference implementations for the series engine ------------

std::vector<double> ref_multiply(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size()) - 1;
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t k = 0; k <= j; ++k) c[j] += a[k] * b[j - k];
  return c;
}

// Reciprocal by Newton doubling r <- r (2 - d r); independent of the
// back-substitution recurrence used by divide().
std::vector<double> ref_reciprocal(const std::vector<double>& d) {
  const std::size_t n = d.size() - 1;
  std::vector<double> r{1.0 / d[0]};
  std::size_t prec = 1;
  while (prec <= n) {
    prec = std::min(2 * prec, n + 1);
    std::vector<double> dp(d.begin(), d.begin() + prec);
    std::vector<double> rp = r;
    rp.resize(prec, 0.0);
    auto dr = ref_multiply(dp, rp);
    for (auto& x : dr) x = -x;
    dr[0] += 2.0;
    r = ref_multiply(rp, dr);
  }
  r.resize(n + 1, 0.0);
  return r;
}

std::vector<double> ref_exp(const std::vector<double>& f) {
  const std::size_t n = f.size() - 1;
  std::vector<double> g = f;
  g[0] = 0.0;
  std::vector<double> acc(n + 1, 0.0), power(n + 1, 0.0);
  acc[0] = 1.0;
  power[0] = 1.0;
  double factorial = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    power = ref_multiply(power, g);
    factorial *= static_cast<double>(k);
    for (std::size_t i = 0; i <= n; ++i) acc[i] += power[i] / factorial;
  }
  const double scale = std::exp(f[0]);
  for (auto& x : acc) x *= scale;
  return acc;
}

// -----------------------------------------------------------------------------

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

CriterionResult criterion1() {
  Timer timer;
  bool ok = true;
  std::ostringstream detail;
  const std::size_t n_check = 50;
  for (double mu : {0.25, 0.5}) {
    const QueueModel model(0.5, mu, ServiceModel::exponential(1.0));
    const double rho = model.rho();  // 0.5
    const double r = model.lambda() / mu;
    const auto orbit = pmf_orbit_given_idle(model, 64);
    const auto count = pmf_nonretrial_count(model, 64);
    double sup_orbit = 0.0, sup_count = 0.0;
    for (std::size_t n = 0; n <= n_check; ++n) {
      sup_orbit = std::max(sup_orbit,
                           std::abs(orbit[n] - negative_binomial_pmf(r, rho, n)));
      sup_count = std::max(
          sup_count, std::abs(count[n] - (1.0 - rho) * std::pow(rho, n)));
    }
    ok = ok && sup_orbit <= 1e-10 && sup_count <= 1e-10;
    detail << "mu=" << mu << ": sup|R-negbin|=" << fmt(sup_orbit)
           << " sup|L-geom|=" << fmt(sup_count) << "; ";
  }
  const double secs = timer.seconds();
  ok = ok && secs < 5.0;
  return {1, "closed-form oracle (exponential service)", ok, detail.str(), secs};
}

CriterionResult criterion2() {
  Timer timer;
  const std::size_t order = 1024;
  const auto model = burr_canonical();
  const auto non_retrial = pmf_nonretrial_count(model, order);
  const auto orbit = pmf_orbit_given_idle(model, order);
  const auto total = pmf_total_count(model, order);
  double sup = 0.0;
  for (std::size_t j = 0; j <= order; ++j) {
    double conv = 0.0;
    for (std::size_t k = 0; k <= j; ++k) conv += non_retrial[k] * orbit[j - k];
    sup = std::max(sup, std::abs(conv - total[j]));
  }
  const double secs = timer.seconds();
  const bool ok = sup <= 1e-12 && secs < 30.0;
  return {2, "decomposition identity (convolution)", ok,
          "sup|conv - pmf|=" + fmt(sup), secs};
}

CriterionResult criterion3() {
  Timer timer;
  bool ok = true;
  std::ostringstream detail;
  for (double d : {0.5, 1.0, 2.5}) {
    double prev_err = 0.0;
    for (double x : {50.0, 100.0, 200.0}) {
      const double exact = gamma_ratio(x, d, EvalMode::kExact);
      const double asym = gamma_ratio(x, d, EvalMode::kAsymptotic2);
      const double rel = std::abs(asym - exact) / exact;
      const double bound = 2.0 * (d + 1.0) * (d + 2.0) / (x * x);
      if (rel > bound) ok = false;
      if (prev_err > 0.0) {
        const double shrink = prev_err / rel;
        if (shrink < 3.0 || shrink > 5.0) ok = false;
      }
      prev_err = rel;
    }
    detail << "d=" << d << " rel(200)=" << fmt(prev_err) << "; ";
  }
  const double secs = timer.seconds();
  ok = ok && secs < 1.0;
  return {3, "gamma-ratio second-order envelope", ok, detail.str(), secs};
}

CriterionResult criterion4() {
  Timer timer;
  bool ok = true;
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double d : {0.5, 1.5, 2.5}) {
      for (long long j : {5LL, 10LL, 20LL}) {
        const double dj = static_cast<double>(j);
        const double ln_norm = std::lgamma(dj + 2.0);
        auto integrand = [lambda, d, dj, ln_norm](double t) {
          if (t <= 0.0) return 0.0;
          return lambda *
                 std::exp((dj + 1.0) * std::log(lambda * t) - lambda * t -
                          ln_norm - d * std::log(t));
        };
        const double peak = (dj + 1.0) / lambda;
        const double sd = std::sqrt(dj + 2.0) / lambda;
        const double cut = peak + 12.0 * sd + 60.0 / lambda;
        std::vector<double> pts{0.0};
        for (double k : {-8.0, -3.0, 0.0, 3.0, 8.0}) {
          const double p = peak + k * sd;
          if (p > 0.0 && p < cut) pts.push_back(p);
        }
        pts.push_back(cut);
        std::sort(pts.begin(), pts.end());
        const double quad =
            integrate_segments(integrand, pts, {.rel_tol = 1e-13}) +
            integrate_tail(integrand, cut, {.rel_tol = 1e-13});
        const double exact = mixed_poisson_power_tail(lambda, d, j, EvalMode::kExact);
        const double rel = std::abs(quad - exact) / exact;
        worst = std::max(worst, rel);
      }
    }
  }
  const double secs = timer.seconds();
  ok = worst <= 1e-8 && secs < 10.0;
  return {4, "mixed-Poisson power-tail exact identity", ok,
          "worst rel diff=" + fmt(worst), secs};
}

CriterionResult criterion5() {
  Timer timer;
  const std::size_t order = 4096;
  const auto model = burr_canonical();
  const auto total = pmf_total_count(model, order);
  const auto expansion = queue_length_expansion(model);
  const double ratio_ref = std::abs(expansion.c2()) / expansion.c1;  // 8/3
  bool ok = true;
  std::ostringstream detail;
  detail << "|c2|/c1=" << fmt(ratio_ref) << "; ";
  for (std::size_t j : {500UL, 1000UL, 2000UL}) {
    const double exact = tail_from_pmf(total, j).value;
    const double dj = static_cast<double>(j);
    const double e1 = std::abs(exact - expansion.value(dj, 1)) / exact;
    const double e2 = std::abs(exact - expansion.value(dj, 2)) / exact;
    const bool refined = e2 < e1;
    const double scaled = e1 * dj;
    const bool in_band = scaled >= 0.7 * ratio_ref && scaled <= 1.3 * ratio_ref;
    ok = ok && refined && in_band;
    detail << "j=" << j << ": e1=" << fmt(e1) << " e2=" << fmt(e2)
           << " e1*j=" << fmt(scaled) << (refined ? "" : " [2nd not smaller]")
           << (in_band ? "" : " [outside 8/3 +-30%]") << "; ";
  }
  const double secs = timer.seconds();
  ok = ok && secs < 600.0;
  return {5, "second-order refinement vs exact series", ok, detail.str(), secs};
}

CriterionResult criterion6() {
  Timer timer;
  const auto model = burr_canonical();
  SimulationConfig config;
  config.horizon = 1e7;
  config.warmup = 1e6;
  config.batches = 32;
  config.seed = 42;
  const auto run = run_retrial_simulation(model, config);

  const double idle_err = std::abs(run.idle_fraction - 0.5);
  const bool idle_ok = idle_err <= run.idle_fraction_half_width;

  const auto series = pmf_total_count(model, 64);
  double tv = 0.0;
  for (std::size_t j = 0; j <= 30; ++j)
    tv += std::abs(series[j] - run.total_count.pmf[j]);
  tv *= 0.5;
  const bool tv_ok = tv < 0.01;

  const double secs = timer.seconds();
  const bool ok = idle_ok && tv_ok && secs < 300.0;
  std::ostringstream detail;
  detail << "idle=" << fmt(run.idle_fraction) << "+-"
         << fmt(run.idle_fraction_half_width) << " (target 0.5), TV(0..30)="
         << fmt(tv);
  return {6, "simulator cross-validation", ok, detail.str(), secs};
}

CriterionResult criterion7() {
  Timer timer;
  const std::size_t order = 512;
  const auto model = burr_canonical();
  const auto orbit = pmf_orbit_given_idle(model, order);
  bool ok = true;
  double prev_gap = std::numeric_limits<double>::infinity();
  double last_ratio = 0.0;
  std::ostringstream detail;
  for (std::size_t j : {50UL, 100UL, 200UL, 400UL}) {
    const double series_tail = tail_from_pmf(orbit, j).value;
    const double t = static_cast<double>(j) / model.lambda();
    const double asym = tail_orbit_time_asym(model, t).value;
    const double ratio = series_tail / asym;
    const double gap = std::abs(ratio - 1.0);
    if (gap > prev_gap) ok = false;  // must move toward 1
    prev_gap = gap;
    last_ratio = ratio;
    detail << "j=" << j << ": ratio=" << fmt(ratio) << "; ";
  }
  if (!(last_ratio >= 0.7 && last_ratio <= 1.3)) ok = false;
  const double secs = timer.seconds();
  ok = ok && secs < 600.0;
  return {7, "orbit tail vs first-order equivalence trend", ok, detail.str(),
          secs};
}

CriterionResult criterion8() {
  Timer timer;
  const auto model = burr_canonical();
  const std::size_t draws = 10'000'000;
  const double threshold = 50.0;
  RngStream rng(20240817);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws; ++i)
    if (sample_geometric_compound(model, rng) > threshold) ++hits;
  const double p_hat = static_cast<double>(hits) / static_cast<double>(draws);
  const double se =
      std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(draws));
  const double expansion = tail_geometric_compound_2nd(model, threshold).value;
  const double gap_se = std::abs(p_hat - expansion) / se;
  const double secs = timer.seconds();
  const bool ok = gap_se <= 3.0 && secs < 120.0;
  std::ostringstream detail;
  detail << "mc=" << fmt(p_hat) << " expansion=" << fmt(expansion)
         << " |gap|/se=" << fmt(gap_se);
  return {8, "geometric-compound tail Monte Carlo", ok, detail.str(), secs};
}

CriterionResult criterion9() {
  Timer timer;
  const std::size_t order = 32;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(order + 1), b(order + 1), den(order + 1), f(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
      a[k] = unit(rng);
      b[k] = unit(rng);
      // contraction keeps quotients O(1): sum_{k>=1}|den_k| <= 0.9 |den_0|
      den[k] = k == 0 ? 1.0 : 0.9 * unit(rng) * std::pow(2.0, -double(k));
      f[k] = unit(rng) / ((k + 1.0) * (k + 1.0));
    }
    const CoefficientSeries sa(a), sb(b), sden(den), sf(f);

    const auto prod = multiply(sa, sb);
    const auto prod_ref = ref_multiply(a, b);
    for (std::size_t k = 0; k <= order; ++k)
      worst = std::max(worst, std::abs(prod[k] - prod_ref[k]));

    const auto quot = divide(sa, sden);
    const auto quot_ref = ref_multiply(a, ref_reciprocal(den));
    for (std::size_t k = 0; k <= order; ++k)
      worst = std::max(worst, std::abs(quot[k] - quot_ref[k]));

    const auto ex = exp(sf);
    const auto ex_ref = ref_exp(f);
    for (std::size_t k = 0; k <= order; ++k)
      worst = std::max(worst, std::abs(ex[k] - ex_ref[k]));
  }
  const double secs = timer.seconds();
  const bool ok = worst <= 1e-13 && secs < 1.0;
  return {9, "series engine vs naive references", ok,
          "worst abs diff=" + fmt(worst), secs};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(std::ostream& out) {
  std::vector<CriterionResult> results;
  const std::function<CriterionResult()> criteria[] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  for (const auto& run : criteria) {
    auto r = run();
    out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
        << r.name << " (" << r.detail << ") [" << fmt(r.seconds) << " s]\n";
    out.flush();
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace retrialq
