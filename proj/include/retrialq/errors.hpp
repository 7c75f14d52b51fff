#pragma once

#include <stdexcept>

namespace retrialq {

/// Heavy-tail expansion parameters requested for a light-tailed family.
struct UnsupportedFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A moment that does not exist for the given tail index.
struct InfiniteMoment : std::domain_error {
  using std::domain_error::domain_error;
};

/// rho = lambda * beta1 >= 1; no stationary distribution exists.
struct UnstableModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Series coefficients blew past the runaway threshold during division/exp.
struct DivergenceGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexBeyondTruncation : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// A second-order expansion needs a > 2.
struct SecondOrderUnavailable : std::domain_error {
  using std::domain_error::domain_error;
};

/// Conditional-on-idle estimate requested from a run with < 1% idle time.
struct InsufficientIdleTime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooFewSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Bad CLI/experiment configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace retrialq
