#pragma once

namespace retrialq {

/// Where a tail value came from. Asymptotic values are expansion values,
/// never claims of bounded error; only exact-series and simulated estimates
/// carry a quantitative uncertainty.
enum class Provenance {
  kAsymptoticOrder1,
  kAsymptoticOrder2,
  kExactSeries,
  kSimulated,
};

struct TailEstimate {
  double value = 0.0;
  Provenance provenance = Provenance::kExactSeries;
  /// Exact-series: truncation-induced bound on the missing mass.
  /// Simulated: 95% confidence half-width. Asymptotic: 0.
  double uncertainty = 0.0;
};

}  // namespace retrialq
