#include "retrialq/queue_model.hpp"

#include <cmath>
#include <sstream>

#include "retrialq/errors.hpp"

namespace retrialq {

QueueModel::QueueModel(double lambda, double mu, ServiceModel service)
    : lambda_(lambda), mu_(mu), service_(std::move(service)) {
  if (!(lambda_ > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(mu_ > 0.0)) throw std::invalid_argument("mu must be > 0 (or inf)");
  rho_ = lambda_ * service_.mean();
  if (!(rho_ < 1.0)) {
    std::ostringstream msg;
    msg << "unstable model: rho = lambda*beta1 = " << rho_
        << " >= 1; the system is stable iff rho < 1";
    throw UnstableModel(msg.str());
  }
  psi_ = std::isfinite(mu_) ? rho_ / (mu_ * (1.0 - rho_)) : 0.0;
}

double QueueModel::c_kappa() const {
  const double a = service_.tail_params().a;
  return 1.0 / ((1.0 - rho_) * (a - 1.0) * service_.mean());
}

}  // namespace retrialq
