#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "retrialq/queue_model.hpp"
#include "retrialq/rng.hpp"

namespace retrialq {

struct SimulationConfig {
  double horizon = 1e6;       // simulated time
  double warmup = 1e5;        // discarded prefix (default 10% of horizon)
  int batches = 32;           // batch-means batches over the retained window
  std::uint64_t seed = 1;
  std::size_t max_state = 4096;  // larger states pool into overflow mass
};

/// Time-average pmf over states 0..max_state-1 with 95% batch-means
/// half-widths. Weights (including overflow) sum to 1 after normalization.
struct StationaryEstimate {
  std::vector<double> pmf;
  std::vector<double> half_width;
  double overflow_mass = 0.0;
  double observed_time = 0.0;
  double warmup_time = 0.0;

  double tail(std::size_t j) const;  // P{X > j}
};

struct RetrialSimulationResult {
  StationaryEstimate total_count;  // law of the total number in system
  double idle_fraction = 0.0;      // estimate of P{server idle}
  double idle_fraction_half_width = 0.0;
  double mean_in_system = 0.0;     // exact time-average (overflow included)
  double mean_half_width = 0.0;
  SimulationConfig config;

  // Per-batch joint time weights, kept so conditional laws can be formed
  // afterwards: [batch][orbit] for idle and busy server states.
  std::vector<std::vector<double>> idle_weight;
  std::vector<std::vector<double>> busy_weight;
  double batch_length = 0.0;
};

/// Event-driven simulation of the retrial queue: when the server is idle
/// with n in orbit the next event is min(Exp(lambda), Exp(n mu)) by
/// memorylessness (one aggregated retrial clock); arrivals during service
/// join the orbit. Ties break arrival-first (probability zero under
/// continuous clocks). Three independent streams: arrivals, services,
/// retrials. Identical seeds give bit-identical estimates.
RetrialSimulationResult run_retrial_simulation(const QueueModel& model,
                                               const SimulationConfig& config);

/// Time-average pmf of the orbit size restricted to idle periods.
/// Throws InsufficientIdleTime when the idle fraction is below 1%.
StationaryEstimate conditional_orbit_pmf(const RetrialSimulationResult& run);

/// Direct sampler of the non-retrial stationary count: a Poisson(lambda T)
/// draw over T = wait + service, where the wait is 0 with probability
/// 1 - rho and otherwise a geometric(rho) sum of equilibrium service draws.
std::vector<std::uint64_t> sample_nonretrial_count(const QueueModel& model,
                                                   std::size_t n_samples,
                                                   std::uint64_t seed);

/// One draw of the geometric compound of equilibrium service times.
double sample_geometric_compound(const QueueModel& model, RngStream& rng);

std::vector<double> empirical_pmf(std::span<const std::uint64_t> samples);

/// Hill estimator of the tail index over the top-k order statistics.
/// Throws TooFewSamples for k < 10, k + 1 > n, or degenerate samples.
double hill_tail_index(std::span<const double> samples, std::size_t k);

}  // namespace retrialq
