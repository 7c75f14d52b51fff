#include "retrialq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "retrialq/errors.hpp"
#include "retrialq/special_functions.hpp"

namespace retrialq {

double StationaryEstimate::tail(std::size_t j) const {
  double acc = 0.0;
  for (std::size_t n = 0; n <= j && n < pmf.size(); ++n) acc += pmf[n];
  return std::max(0.0, 1.0 - acc);
}

namespace {

struct BatchGrid {
  double warmup;
  double batch_length;
  int batches;

  // Splits [t0, t1) across warmup boundary and batch boundaries, calling
  // add(batch_index, duration) for the retained parts.
  template <class Add>
  void deposit(double t0, double t1, Add&& add) const {
    if (t1 <= warmup) return;
    double t = std::max(t0, warmup);
    while (t < t1) {
      const double rel = t - warmup;
      int b = static_cast<int>(rel / batch_length);
      if (b >= batches) b = batches - 1;  // guard the horizon endpoint
      double b_end = warmup + (b + 1) * batch_length;
      if (b_end <= t && b + 1 < batches) {
        // t sits on a boundary whose index recomputation rounded down
        ++b;
        b_end = warmup + (b + 1) * batch_length;
      }
      const double seg_end = std::min(t1, b_end);
      add(b, seg_end - t);
      if (seg_end <= t) break;  // t1 - t below floating resolution
      t = seg_end;
    }
  }
};

double t_quantile_975(int dof) {
  return student_t_quantile(static_cast<double>(dof), 0.975);
}

// Batch-means half-width of the mean of per-batch values.
double half_width_of(std::span<const double> batch_values, double tq) {
  const int b = static_cast<int>(batch_values.size());
  const double mean =
      std::accumulate(batch_values.begin(), batch_values.end(), 0.0) / b;
  double ss = 0.0;
  for (double v : batch_values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (b - 1));
  return tq * sd / std::sqrt(static_cast<double>(b));
}

}  // namespace

RetrialSimulationResult run_retrial_simulation(const QueueModel& model,
                                               const SimulationConfig& config) {
  if (!model.has_retrial())
    throw std::invalid_argument(
        "run_retrial_simulation: mu must be finite (retrial system)");
  if (!(config.horizon > config.warmup))
    throw std::invalid_argument("run_retrial_simulation: horizon <= warmup");
  if (config.batches < 2)
    throw std::invalid_argument("run_retrial_simulation: need >= 2 batches");

  const double lambda = model.lambda();
  const double mu = model.mu();
  const std::size_t cap = config.max_state;
  const int nb = config.batches;
  const BatchGrid grid{config.warmup,
                       (config.horizon - config.warmup) / nb, nb};

  RngStream arrivals(config.seed * 3 + 0);
  RngStream services(config.seed * 3 + 1);
  RngStream retrials(config.seed * 3 + 2);

  std::vector<std::vector<double>> idle_w(nb, std::vector<double>(cap + 1, 0.0));
  std::vector<std::vector<double>> busy_w(nb, std::vector<double>(cap + 1, 0.0));
  std::vector<double> count_integral(nb, 0.0);  // time integral of L

  double clock = 0.0;
  bool busy = false;
  std::size_t orbit = 0;
  double completion = 0.0;
  double next_arrival = arrivals.exponential(lambda);

  while (clock < config.horizon) {
    double event;
    enum { kArrival, kCompletion, kRetrial } kind;
    if (busy) {
      if (next_arrival <= completion) {
        event = next_arrival;
        kind = kArrival;
      } else {
        event = completion;
        kind = kCompletion;
      }
    } else {
      event = next_arrival;
      kind = kArrival;
      if (orbit > 0) {
        const double retrial_at =
            clock + retrials.exponential(static_cast<double>(orbit) * mu);
        if (retrial_at < next_arrival) {  // ties break arrival-first
          event = retrial_at;
          kind = kRetrial;
        }
      }
    }
    const double until = std::min(event, config.horizon);
    const std::size_t state = std::min(orbit, cap);
    const std::size_t in_system = orbit + (busy ? 1 : 0);
    grid.deposit(clock, until, [&](int b, double dt) {
      (busy ? busy_w : idle_w)[b][state] += dt;
      count_integral[b] += dt * static_cast<double>(in_system);
    });
    clock = event;
    if (clock >= config.horizon) break;

    switch (kind) {
      case kArrival:
        next_arrival = clock + arrivals.exponential(lambda);
        if (busy) {
          ++orbit;  // blocked primary joins the orbit
        } else {
          busy = true;
          completion = clock + model.service().sample(services);
        }
        break;
      case kCompletion:
        busy = false;
        break;
      case kRetrial:
        --orbit;
        busy = true;
        completion = clock + model.service().sample(services);
        break;
    }
  }

  RetrialSimulationResult result;
  result.config = config;
  result.batch_length = grid.batch_length;
  result.idle_weight = std::move(idle_w);
  result.busy_weight = std::move(busy_w);

  const double observed = config.horizon - config.warmup;
  const double tq = t_quantile_975(nb - 1);

  // Law of the total count: idle orbit n -> n in system; busy orbit n -> n+1.
  StationaryEstimate& total = result.total_count;
  total.pmf.assign(cap + 1, 0.0);
  total.half_width.assign(cap + 1, 0.0);
  total.observed_time = observed;
  total.warmup_time = config.warmup;
  std::vector<double> batch_vals(nb);
  for (std::size_t j = 0; j <= cap; ++j) {
    for (int b = 0; b < nb; ++b) {
      double w = result.idle_weight[b][j];
      if (j > 0) w += result.busy_weight[b][j - 1];
      batch_vals[b] = w / grid.batch_length;
    }
    const double p =
        std::accumulate(batch_vals.begin(), batch_vals.end(), 0.0) / nb;
    total.pmf[j] = p;
    total.half_width[j] = half_width_of(batch_vals, tq);
  }
  // Overflow: busy weight at the cap has total count cap+1, beyond the grid.
  double overflow = 0.0;
  for (int b = 0; b < nb; ++b) overflow += result.busy_weight[b][cap];
  total.overflow_mass = overflow / observed;

  for (int b = 0; b < nb; ++b) {
    double idle_time = 0.0;
    for (double w : result.idle_weight[b]) idle_time += w;
    batch_vals[b] = idle_time / grid.batch_length;
  }
  result.idle_fraction =
      std::accumulate(batch_vals.begin(), batch_vals.end(), 0.0) / nb;
  result.idle_fraction_half_width = half_width_of(batch_vals, tq);

  for (int b = 0; b < nb; ++b) batch_vals[b] = count_integral[b] / grid.batch_length;
  result.mean_in_system =
      std::accumulate(batch_vals.begin(), batch_vals.end(), 0.0) / nb;
  result.mean_half_width = half_width_of(batch_vals, tq);
  return result;
}

StationaryEstimate conditional_orbit_pmf(const RetrialSimulationResult& run) {
  const int nb = static_cast<int>(run.idle_weight.size());
  const std::size_t cap = run.config.max_state;
  if (run.idle_fraction < 0.01)
    throw InsufficientIdleTime(
        "conditional_orbit_pmf: idle fraction below 1%, conditional law "
        "unreliable");

  StationaryEstimate est;
  est.pmf.assign(cap + 1, 0.0);
  est.half_width.assign(cap + 1, 0.0);
  est.observed_time = run.total_count.observed_time;
  est.warmup_time = run.total_count.warmup_time;

  std::vector<double> idle_time(nb, 0.0);
  for (int b = 0; b < nb; ++b)
    for (double w : run.idle_weight[b]) idle_time[b] += w;

  const double tq = t_quantile_975(nb - 1);
  std::vector<double> batch_vals(nb);
  for (std::size_t n = 0; n <= cap; ++n) {
    for (int b = 0; b < nb; ++b)
      batch_vals[b] =
          idle_time[b] > 0.0 ? run.idle_weight[b][n] / idle_time[b] : 0.0;
    est.pmf[n] =
        std::accumulate(batch_vals.begin(), batch_vals.end(), 0.0) / nb;
    est.half_width[n] = half_width_of(batch_vals, tq);
  }
  const double total = std::accumulate(est.pmf.begin(), est.pmf.end(), 0.0);
  est.overflow_mass = std::max(0.0, 1.0 - total);
  return est;
}

std::vector<std::uint64_t> sample_nonretrial_count(const QueueModel& model,
                                                   std::size_t n_samples,
                                                   std::uint64_t seed) {
  RngStream rng(seed);
  const double rho = model.rho();
  std::vector<std::uint64_t> counts(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    double total = 0.0;
    if (rng.uniform() < rho) total += sample_geometric_compound(model, rng);
    total += model.service().sample(rng);
    counts[i] = rng.poisson(model.lambda() * total);
  }
  return counts;
}

double sample_geometric_compound(const QueueModel& model, RngStream& rng) {
  const std::uint64_t draws = rng.geometric_from_one(model.rho());
  double sum = 0.0;
  for (std::uint64_t k = 0; k < draws; ++k)
    sum += model.service().equilibrium_sample(rng);
  return sum;
}

std::vector<double> empirical_pmf(std::span<const std::uint64_t> samples) {
  std::size_t max_count = 0;
  for (auto c : samples) max_count = std::max<std::size_t>(max_count, c);
  std::vector<double> pmf(max_count + 1, 0.0);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto c : samples) pmf[c] += inv;
  return pmf;
}

double hill_tail_index(std::span<const double> samples, std::size_t k) {
  if (k < 10) throw TooFewSamples("hill_tail_index: k must be >= 10");
  if (samples.size() <= k + 1)
    throw TooFewSamples("hill_tail_index: need more than k+1 samples");
  std::vector<double> top(samples.begin(), samples.end());
  std::nth_element(top.begin(), top.begin() + k, top.end(),
                   std::greater<double>());
  const double pivot = top[k];  // (k+1)-th order statistic
  if (!(pivot > 0.0))
    throw TooFewSamples("hill_tail_index: (k+1)-th order statistic not positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(top[i] / pivot);
  if (!(acc > 0.0))
    throw TooFewSamples("hill_tail_index: degenerate top order statistics");
  return static_cast<double>(k) / acc;
}

}  // namespace retrialq
