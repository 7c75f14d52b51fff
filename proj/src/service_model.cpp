#include "retrialq/service_model.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "retrialq/errors.hpp"
#include "retrialq/quadrature.hpp"
#include "retrialq/root_find.hpp"
#include "retrialq/special_functions.hpp"

namespace retrialq {

double SlowlyVarying::constant_value() const {
  if (!constant_)
    throw std::logic_error("SlowlyVarying: log-power form has no constant value");
  return value_;
}

namespace {

double check_positive(double x, const char* name) {
  if (!(x > 0.0))
    throw std::invalid_argument(std::string(name) + " must be > 0");
  return x;
}

}  // namespace

ServiceModel::ServiceModel(Family f, double p1, double p2, double p3)
    : family_(f) {
  switch (f) {
    case Family::kHallWeiss: {
      v_ = p1;
      w_ = p2;
      if (!(v_ > 2.0)) throw std::invalid_argument("hallweiss: v must be > 2");
      if (!(w_ < 0.0)) throw std::invalid_argument("hallweiss: w must be < 0");
      beta1_ = 1.0 + 0.5 * (1.0 / (v_ - 1.0) + 1.0 / (v_ - 1.0 - w_));
      beta2_ = 1.0 + 1.0 / (v_ - 2.0) + 1.0 / (v_ - 2.0 - w_);
      scale_ = 1.0;
      break;
    }
    case Family::kBurr: {
      b_ = check_positive(p1, "burr: b");
      v_ = check_positive(p2, "burr: v");
      w_ = check_positive(p3, "burr: w");
      if (!(v_ * w_ > 2.0))
        throw std::invalid_argument("burr: v*w must be > 2");
      // beta_k = k b^{k/w} B(k/w, v - k/w) / w, finite for v w > k.
      auto moment = [this](double k) {
        const double x = k / w_;
        const double ln_beta =
            std::lgamma(x) + std::lgamma(v_ - x) - std::lgamma(v_);
        return k * std::pow(b_, x) * std::exp(ln_beta) / w_;
      };
      beta1_ = moment(1.0);
      beta2_ = moment(2.0);
      scale_ = std::pow(b_, 1.0 / w_);
      break;
    }
    case Family::kStudentT: {
      v_ = p1;
      if (!(v_ > 2.0)) throw std::invalid_argument("studentt: v must be > 2");
      student_c_ = std::exp(std::lgamma(0.5 * (v_ + 1.0)) - std::lgamma(0.5 * v_) -
                            0.5 * std::log(v_ * M_PI));
      beta1_ = 2.0 * student_c_ * v_ / (v_ - 1.0);
      beta2_ = v_ / (v_ - 2.0);
      scale_ = std::sqrt(v_);
      break;
    }
    case Family::kExponential: {
      nu_ = check_positive(p1, "exponential: nu");
      beta1_ = 1.0 / nu_;
      beta2_ = 2.0 / (nu_ * nu_);
      scale_ = 1.0 / nu_;
      break;
    }
  }
}

ServiceModel ServiceModel::hall_weiss(double v, double w) {
  return ServiceModel(Family::kHallWeiss, v, w, 0.0);
}
ServiceModel ServiceModel::burr(double b, double v, double w) {
  return ServiceModel(Family::kBurr, b, v, w);
}
ServiceModel ServiceModel::student_t(double v) {
  return ServiceModel(Family::kStudentT, v, 0.0, 0.0);
}
ServiceModel ServiceModel::exponential(double nu) {
  return ServiceModel(Family::kExponential, nu, 0.0, 0.0);
}

ServiceModel ServiceModel::parse(std::string_view spec) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(spec)};
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("model spec: expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  const auto fam_it = kv.find("family");
  if (fam_it == kv.end()) throw ConfigError("model spec: missing family=");
  const std::string fam = fam_it->second;
  kv.erase(fam_it);

  auto num = [&kv](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw ConfigError(std::string("model spec: missing parameter ") + key);
    std::size_t pos = 0;
    const double x = std::stod(it->second, &pos);
    if (pos != it->second.size())
      throw ConfigError(std::string("model spec: bad number for ") + key);
    kv.erase(it);
    return x;
  };
  auto done = [&kv] {
    if (!kv.empty())
      throw ConfigError("model spec: unknown parameter '" + kv.begin()->first + "'");
  };

  try {
    if (fam == "burr") {
      const double b = num("b"), v = num("v"), w = num("w");
      done();
      return burr(b, v, w);
    }
    if (fam == "lomax") {
      const double b = num("b"), v = num("v");
      done();
      return burr(b, v, 1.0);
    }
    if (fam == "hallweiss" || fam == "hall_weiss" || fam == "hall-weiss") {
      const double v = num("v"), w = num("w");
      done();
      return hall_weiss(v, w);
    }
    if (fam == "studentt" || fam == "student_t" || fam == "student-t") {
      const double v = num("v");
      done();
      return student_t(v);
    }
    if (fam == "exponential" || fam == "exp") {
      const double nu = num("nu");
      done();
      return exponential(nu);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model spec: ") + e.what());
  }
  throw ConfigError("model spec: unknown family '" + fam + "'");
}

std::string ServiceModel::spec_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (family_) {
    case Family::kHallWeiss:
      out << "family=hallweiss v=" << v_ << " w=" << w_;
      break;
    case Family::kBurr:
      out << "family=burr b=" << b_ << " v=" << v_ << " w=" << w_;
      break;
    case Family::kStudentT:
      out << "family=studentt v=" << v_;
      break;
    case Family::kExponential:
      out << "family=exponential nu=" << nu_;
      break;
  }
  return out.str();
}

double ServiceModel::tail(double t) const {
  if (t < 0.0) throw std::domain_error("tail: t must be >= 0");
  switch (family_) {
    case Family::kHallWeiss:
      if (t < 1.0) return 1.0;
      return 0.5 * std::pow(t, -v_) * (1.0 + std::pow(t, w_));
    case Family::kBurr:
      return std::exp(v_ * (std::log(b_) - std::log(b_ + std::pow(t, w_))));
    case Family::kStudentT:
      if (t == 0.0) return 1.0;
      return 2.0 * student_t_tail(v_, t);
    case Family::kExponential:
      return std::exp(-nu_ * t);
  }
  return 0.0;
}

double ServiceModel::density(double t) const {
  if (t < 0.0) return 0.0;
  switch (family_) {
    case Family::kHallWeiss:
      if (t < 1.0) return 0.0;
      return 0.5 * (v_ * std::pow(t, -v_ - 1.0) +
                    (v_ - w_) * std::pow(t, w_ - v_ - 1.0));
    case Family::kBurr: {
      const double tw = std::pow(t, w_);
      return v_ * w_ * std::pow(t, w_ - 1.0) *
             std::exp(v_ * std::log(b_) - (v_ + 1.0) * std::log(b_ + tw));
    }
    case Family::kStudentT:
      return 2.0 * student_c_ *
             std::pow(1.0 + t * t / v_, -0.5 * (v_ + 1.0));
    case Family::kExponential:
      return nu_ * std::exp(-nu_ * t);
  }
  return 0.0;
}

TailExpansionParams ServiceModel::tail_params() const {
  switch (family_) {
    case Family::kHallWeiss:
      return {v_, -w_, 0.5, 0.5, SlowlyVarying::constant(1.0)};
    case Family::kBurr:
      return {v_ * w_, w_, std::pow(b_, v_), -v_ * std::pow(b_, v_ + 1.0),
              SlowlyVarying::constant(1.0)};
    case Family::kStudentT: {
      // Folded to t >= 0: both coefficients are twice the one-sided values.
      const double cv = student_c_ * std::pow(v_, 0.5 * (v_ + 1.0));
      return {v_, 2.0, 2.0 * cv / v_, -cv * v_ * (v_ + 1.0) / (v_ + 2.0),
              SlowlyVarying::constant(1.0)};
    }
    case Family::kExponential:
      throw UnsupportedFamily(
          "tail_params: exponential service has no regularly varying tail");
  }
  throw std::logic_error("unreachable");
}

double ServiceModel::tail_integral(double t) const {
  switch (family_) {
    case Family::kHallWeiss: {
      auto upper = [this](double x) {  // integral over [max(x,1), inf)
        return 0.5 * (std::pow(x, 1.0 - v_) / (v_ - 1.0) +
                      std::pow(x, w_ + 1.0 - v_) / (v_ - 1.0 - w_));
      };
      if (t >= 1.0) return upper(t);
      return (1.0 - t) + upper(1.0);
    }
    case Family::kBurr:
      if (w_ == 1.0)  // Lomax
        return std::pow(b_, v_) * std::pow(b_ + t, 1.0 - v_) / (v_ - 1.0);
      return integrate_upper([this](double x) { return tail(x); }, t, scale_,
                             {.rel_tol = 1e-12});
    case Family::kStudentT: {
      const double f1 = student_c_ * std::pow(1.0 + t * t / v_, -0.5 * (v_ + 1.0));
      return 2.0 * (v_ + t * t) * f1 / (v_ - 1.0) - t * tail(t);
    }
    case Family::kExponential:
      return std::exp(-nu_ * t) / nu_;
  }
  return 0.0;
}

double ServiceModel::equilibrium_tail(double t) const {
  if (t < 0.0) throw std::domain_error("equilibrium_tail: t must be >= 0");
  return tail_integral(t) / beta1_;
}

double ServiceModel::quantile(double p) const {
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("quantile: p must be in (0, 1]");
  switch (family_) {
    case Family::kHallWeiss: {
      if (p >= 1.0) return 0.0;
      // Solve 0.5 (y^v + y^{v-w}) = p for y = 1/t on (0, 1].
      auto fy = [this, p](double y) {
        return 0.5 * (std::pow(y, v_) + std::pow(y, v_ - w_)) - p;
      };
      auto dfy = [this](double y) {
        return 0.5 * (v_ * std::pow(y, v_ - 1.0) +
                      (v_ - w_) * std::pow(y, v_ - w_ - 1.0));
      };
      const double y = solve_bracketed(fy, dfy, 0.0, 1.0, 1e-14);
      return 1.0 / y;
    }
    case Family::kBurr:
      return std::pow(b_ * (std::pow(p, -1.0 / v_) - 1.0), 1.0 / w_);
    case Family::kStudentT:
      if (p >= 1.0) return 0.0;
      // tail(t) = 2 P{T > t} = p.
      return student_t_quantile(v_, 1.0 - 0.5 * p);
    case Family::kExponential:
      return -std::log(p) / nu_;
  }
  return 0.0;
}

double ServiceModel::equilibrium_quantile(double p) const {
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("equilibrium_quantile: p must be in (0, 1]");
  switch (family_) {
    case Family::kBurr:
      if (w_ == 1.0)  // equilibrium of Lomax(b, v) is Lomax(b, v-1)
        return b_ * (std::pow(p, -1.0 / (v_ - 1.0)) - 1.0);
      break;
    case Family::kExponential:  // exponential is its own equilibrium
      return -std::log(p) / nu_;
    case Family::kHallWeiss: {
      const double eq1 = equilibrium_tail(1.0);
      if (p >= eq1) return beta1_ * (1.0 - p);  // linear branch, t in [0, 1]
      // Solve 0.5 [y^{v-1}/(v-1) + y^{v-1-w}/(v-1-w)] = p beta1, y = 1/t.
      auto fy = [this, p](double y) {
        return 0.5 * (std::pow(y, v_ - 1.0) / (v_ - 1.0) +
                      std::pow(y, v_ - 1.0 - w_) / (v_ - 1.0 - w_)) -
               p * beta1_;
      };
      const double y = solve_bracketed_bisect(fy, 0.0, 1.0, 1e-14);
      return 1.0 / y;
    }
    default:
      break;
  }
  // Bracketed inversion of the equilibrium tail (general Burr, Student-t).
  if (p >= equilibrium_tail(0.0)) return 0.0;
  double hi = std::max(scale_, 1.0);
  while (equilibrium_tail(hi) > p && hi < 1e300) hi *= 4.0;
  auto f = [this, p](double t) { return equilibrium_tail(t) - p; };
  auto df = [this](double t) { return -tail(t) / beta1_; };
  return solve_bracketed(f, df, 0.0, hi, 1e-12);
}

}  // namespace retrialq
