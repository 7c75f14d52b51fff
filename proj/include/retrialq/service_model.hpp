#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "retrialq/rng.hpp"

namespace retrialq {

/// Slowly varying factor L0 of the tail expansion: either a constant or
/// (ln t)^p. Log-power forms evaluate to 0 at t <= 1; callers should use
/// t >= 2 with them.
class SlowlyVarying {
 public:
  static SlowlyVarying constant(double c) { return SlowlyVarying(true, c); }
  static SlowlyVarying log_power(double p) { return SlowlyVarying(false, p); }

  double operator()(double t) const {
    if (constant_) return value_;
    if (t <= 1.0) return 0.0;
    return std::pow(std::log(t), value_);
  }

  bool is_constant() const { return constant_; }
  double constant_value() const;  // throws if log-power
  double exponent() const { return value_; }

 private:
  SlowlyVarying(bool constant, double value) : constant_(constant), value_(value) {}
  bool constant_;
  double value_;
};

/// The tuple (a, h, r1, r2, L0) of the service-time tail expansion
/// tail(t) = t^-a (r1 + r2 t^-h L0(t)).
struct TailExpansionParams {
  double a;   // tail index, > 1 (> 2 for any second-order use)
  double h;   // second-order gap, > 0
  double r1;  // leading coefficient, > 0
  double r2;  // second coefficient, any sign
  SlowlyVarying l0 = SlowlyVarying::constant(1.0);

  /// The full slowly varying part L(t) = r1 + r2 t^-h L0(t).
  double slowly_varying_at(double t) const {
    return r1 + r2 * std::pow(t, -h) * l0(t);
  }
};

struct Moments {
  double beta1;  // mean
  double beta2;  // second moment
};

/// Parametric heavy-tailed service-time distribution (plus the light-tailed
/// exponential oracle). Immutable after construction; safe to share across
/// threads. Sampling draws from a caller-owned RngStream.
class ServiceModel {
 public:
  enum class Family { kHallWeiss, kBurr, kStudentT, kExponential };

  // Factories validate parameters up front: the tail expansions used
  // downstream need a > 2, so v > 2 (HallWeiss, StudentT) and v*w > 2 (Burr)
  // are enforced here rather than at call sites.
  static ServiceModel hall_weiss(double v, double w);
  static ServiceModel burr(double b, double v, double w);
  static ServiceModel student_t(double v);
  static ServiceModel exponential(double nu);

  /// Parses a plain-text spec: whitespace-separated key=value tokens, e.g.
  /// "family=burr b=2 v=3 w=1". Families: burr (b,v,w), lomax (b,v; w=1),
  /// hallweiss (v,w), studentt (v), exponential (nu).
  static ServiceModel parse(std::string_view spec);

  Family family() const { return family_; }
  std::string spec_string() const;

  double tail(double t) const;
  double cdf(double t) const { return 1.0 - tail(t); }
  double density(double t) const;

  /// Two-term tail expansion parameters; throws UnsupportedFamily for the
  /// exponential family (no regularly varying tail).
  TailExpansionParams tail_params() const;

  Moments moments() const { return {beta1_, beta2_}; }
  double mean() const { return beta1_; }
  double second_moment() const { return beta2_; }

  /// (1/beta1) * integral of tail over [t, inf).
  double equilibrium_tail(double t) const;

  /// Inverse of tail: smallest t with tail(t) <= p.
  double quantile(double p) const;
  double equilibrium_quantile(double p) const;

  double sample(RngStream& rng) const { return quantile(rng.uniform()); }
  double equilibrium_sample(RngStream& rng) const {
    return equilibrium_quantile(rng.uniform());
  }

  /// Characteristic time scale (used to place quadrature break points).
  double scale() const { return scale_; }

 private:
  ServiceModel(Family f, double p1, double p2, double p3);
  double tail_integral(double t) const;  // integral of tail over [t, inf)

  Family family_;
  double b_ = 0.0, v_ = 0.0, w_ = 0.0, nu_ = 0.0;
  double beta1_ = 0.0, beta2_ = 0.0;
  double student_c_ = 0.0;  // one-sided Student-t density prefactor
  double scale_ = 1.0;
};

}  // namespace retrialq
