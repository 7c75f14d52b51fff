#pragma once

#include <limits>

#include "retrialq/service_model.hpp"

namespace retrialq {

/// Arrival rate, retrial rate and service distribution of one queue; the
/// single source of the derived constants rho, psi, c_kappa. Construction
/// rejects unstable models (rho >= 1). mu may be +inf: the non-retrial
/// system, in which case psi = 0.
class QueueModel {
 public:
  static constexpr double kNoRetrial = std::numeric_limits<double>::infinity();

  QueueModel(double lambda, double mu, ServiceModel service);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  bool has_retrial() const { return std::isfinite(mu_); }
  const ServiceModel& service() const { return service_; }

  double rho() const { return rho_; }

  /// rho / (mu (1 - rho)); 0 for the non-retrial system.
  double psi() const { return psi_; }

  /// 1 / ((1 - rho)(a - 1) beta1); needs tail params (throws for exponential).
  double c_kappa() const;

 private:
  double lambda_;
  double mu_;
  ServiceModel service_;
  double rho_;
  double psi_;
};

}  // namespace retrialq
