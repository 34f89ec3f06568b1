#include "tailcord/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tailcord/errors.hpp"
#include "tailcord/normal.hpp"

namespace tailcord {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_param(const std::optional<double>& p, const char* name) {
  if (!p) throw InvalidModelError(std::string("model parameter missing: ") + name);
  return *p;
}

void require_positive_args(const ModelSpec& model, double x, double y, const char* op) {
  if (model.family() == Family::GaussianBivariate) {
    if (std::isnan(x) || std::isnan(y)) throw DomainError(std::string(op) + ": NaN argument");
    return;
  }
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError(std::string(op) + ": arguments must be positive on the Frechet scale");
  }
}

void require_tail_family(const ModelSpec& model, const char* op) {
  if (model.family() == Family::GaussianBivariate) {
    throw UnsupportedFamilyError(std::string(op) +
                                 ": Gaussian model has no nondegenerate joint-tail limit");
  }
}

// Unit Frechet survival 1 - exp(-1/x).
double frechet_sf(double x) { return -std::expm1(-1.0 / x); }

double logistic_V(double gamma, double x, double y) {
  // (x^{-1/g} + y^{-1/g})^g = m^{-1} (1 + (m/M)^{1/g})^g with m = min, M = max.
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  if (std::isinf(hi)) return 1.0 / lo;
  return std::pow(1.0 + std::pow(lo / hi, 1.0 / gamma), gamma) / lo;
}

// Survival Clayton joint survival on the Frechet scale from marginal tails.
double clayton_survival_from_tails(double theta, double sx, double sy) {
  const double a = std::min(sx, sy);
  const double b = std::max(sx, sy);
  if (a <= 0.0) return 0.0;
  const double inner = 1.0 + std::pow(a / b, theta) - std::pow(a, theta);
  return a * std::pow(inner, -1.0 / theta);
}

double gaussian_scale(double rho) { return std::sqrt((1.0 - rho) * (1.0 + rho)); }

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::SurvivalClaytonPareto: return "survival-clayton";
    case Family::LogisticFrechet: return "logistic";
    case Family::GaussianBivariate: return "gaussian";
  }
  return "unknown";
}

std::string_view to_string(Scale scale) {
  switch (scale) {
    case Scale::ParetoLomax: return "pareto";
    case Scale::UnitFrechet: return "frechet";
    case Scale::StandardNormal: return "normal";
    case Scale::UnitExponential: return "exponential";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "survival-clayton" || name == "clayton") return Family::SurvivalClaytonPareto;
  if (name == "logistic") return Family::LogisticFrechet;
  if (name == "gaussian") return Family::GaussianBivariate;
  throw InvalidModelError("unknown model family: " + std::string(name));
}

Scale scale_from_string(std::string_view name) {
  if (name == "pareto") return Scale::ParetoLomax;
  if (name == "frechet") return Scale::UnitFrechet;
  if (name == "normal") return Scale::StandardNormal;
  if (name == "exponential") return Scale::UnitExponential;
  throw DomainError("unknown marginal scale: " + std::string(name));
}

ModelSpec ModelSpec::survival_clayton(double theta, double nu) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidModelError("theta must be > 0");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidModelError("nu must be > 0");
  ModelSpec m;
  m.family_ = Family::SurvivalClaytonPareto;
  m.theta_ = theta;
  m.nu_ = nu;
  return m;
}

ModelSpec ModelSpec::logistic(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidModelError("gamma must lie in (0, 1)");
  ModelSpec m;
  m.family_ = Family::LogisticFrechet;
  m.gamma_ = gamma;
  return m;
}

ModelSpec ModelSpec::gaussian(double rho) {
  // rho = 0 is kept as the independence reference.
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidModelError("rho must lie in [0, 1)");
  ModelSpec m;
  m.family_ = Family::GaussianBivariate;
  m.rho_ = rho;
  return m;
}

ModelSpec ModelSpec::from_parameters(Family family, std::optional<double> theta,
                                     std::optional<double> nu, std::optional<double> gamma,
                                     std::optional<double> rho) {
  auto forbid = [](const std::optional<double>& p, const char* name, Family f) {
    if (p) {
      throw InvalidModelError(std::string("parameter ") + name + " is not used by family " +
                              std::string(to_string(f)));
    }
  };
  switch (family) {
    case Family::SurvivalClaytonPareto:
      forbid(gamma, "gamma", family);
      forbid(rho, "rho", family);
      return survival_clayton(require_param(theta, "theta"), nu.value_or(1.0));
    case Family::LogisticFrechet:
      forbid(theta, "theta", family);
      forbid(nu, "nu", family);
      forbid(rho, "rho", family);
      return logistic(require_param(gamma, "gamma"));
    case Family::GaussianBivariate:
      forbid(theta, "theta", family);
      forbid(nu, "nu", family);
      forbid(gamma, "gamma", family);
      return gaussian(require_param(rho, "rho"));
  }
  throw InvalidModelError("unknown family");
}

Scale ModelSpec::working_scale() const noexcept {
  return family_ == Family::GaussianBivariate ? Scale::StandardNormal : Scale::UnitFrechet;
}

Scale ModelSpec::sample_scale() const noexcept {
  switch (family_) {
    case Family::SurvivalClaytonPareto: return Scale::ParetoLomax;
    case Family::LogisticFrechet: return Scale::UnitFrechet;
    case Family::GaussianBivariate: return Scale::StandardNormal;
  }
  return Scale::UnitFrechet;
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  if (theta_) os << " theta=" << *theta_;
  if (nu_) os << " nu=" << *nu_;
  if (gamma_) os << " gamma=" << *gamma_;
  if (rho_) os << " rho=" << *rho_;
  return os.str();
}

double marginal_cdf(const ModelSpec& model, double x) {
  if (model.family() == Family::GaussianBivariate) return normal::cdf(x);
  if (x <= 0.0) return 0.0;
  return std::exp(-1.0 / x);
}

double marginal_sf(const ModelSpec& model, double x) {
  if (model.family() == Family::GaussianBivariate) return normal::sf(x);
  if (x <= 0.0) return 1.0;
  return frechet_sf(x);
}

double marginal_pdf(const ModelSpec& model, double x) {
  if (model.family() == Family::GaussianBivariate) return normal::pdf(x);
  if (x <= 0.0) return 0.0;
  return std::exp(-1.0 / x) / (x * x);
}

double joint_survival(const ModelSpec& model, double x, double y) {
  require_positive_args(model, x, y, "joint_survival");
  switch (model.family()) {
    case Family::SurvivalClaytonPareto:
      return clayton_survival_from_tails(*model.theta(), frechet_sf(x), frechet_sf(y));
    case Family::LogisticFrechet: {
      if (std::isinf(x) || std::isinf(y)) return 0.0;
      const double v = logistic_V(*model.gamma(), x, y);
      const double s = -std::expm1(-1.0 / x) - std::expm1(-1.0 / y) + std::expm1(-v);
      return std::clamp(s, 0.0, 1.0);
    }
    case Family::GaussianBivariate:
      return normal::bivariate_sf(x, y, *model.rho());
  }
  return 0.0;
}

double joint_cdf(const ModelSpec& model, double x, double y) {
  require_positive_args(model, x, y, "joint_cdf");
  switch (model.family()) {
    case Family::SurvivalClaytonPareto: {
      const double sx = frechet_sf(x);
      const double sy = frechet_sf(y);
      const double either = sx + sy - clayton_survival_from_tails(*model.theta(), sx, sy);
      return std::clamp(1.0 - either, 0.0, 1.0);
    }
    case Family::LogisticFrechet:
      return std::exp(-logistic_V(*model.gamma(), x, y));
    case Family::GaussianBivariate:
      return normal::bivariate_cdf(x, y, *model.rho());
  }
  return 0.0;
}

double log_conditional_F1(const ModelSpec& model, double y, double x) {
  require_positive_args(model, x, y, "conditional_F1");
  if (y == kInf) return 0.0;
  const double sx = marginal_sf(model, x);
  if (sx < kConditioningGuard) {
    throw ConditioningDegenerateError("conditional_F1: P(X > x) below guard threshold");
  }
  const double ratio = std::clamp(joint_survival(model, x, y) / sx, 0.0, 1.0);
  return std::log1p(-ratio);
}

double conditional_F1(const ModelSpec& model, double y, double x) {
  return std::exp(log_conditional_F1(model, y, x));
}

double log_conditional_F2(const ModelSpec& model, double y, double x) {
  require_positive_args(model, x, y, "conditional_F2");
  if (y == kInf) return 0.0;
  const double fx = marginal_cdf(model, x);
  if (fx < kConditioningGuard) {
    throw ConditioningDegenerateError("conditional_F2: P(X <= x) below guard threshold");
  }
  switch (model.family()) {
    case Family::LogisticFrechet:
      return std::min(0.0, 1.0 / x - logistic_V(*model.gamma(), x, y));
    case Family::SurvivalClaytonPareto: {
      // 1 - F2 = P(X <= x, Y > y) / P(X <= x).
      const double sx = frechet_sf(x);
      const double sy = frechet_sf(y);
      const double mass = sy - clayton_survival_from_tails(*model.theta(), sx, sy);
      return std::log1p(-std::clamp(mass / fx, 0.0, 1.0));
    }
    case Family::GaussianBivariate: {
      const double rho = *model.rho();
      // P(X <= x, Y > y) = P(X <= x) - P(X <= x, Y <= y) = P(-X >= -x, Y > y).
      const double mass = normal::bivariate_sf(-x, y, -rho);
      return std::log1p(-std::clamp(mass / fx, 0.0, 1.0));
    }
  }
  return 0.0;
}

double conditional_F2(const ModelSpec& model, double y, double x) {
  return std::exp(log_conditional_F2(model, y, x));
}

double conditional_F3(const ModelSpec& model, double y, double x) {
  require_positive_args(model, x, y, "conditional_F3");
  if (y == kInf) return 1.0;
  switch (model.family()) {
    case Family::SurvivalClaytonPareto: {
      // F3 = 1 + (dF_bar/dx) / f_X = 1 - (s_x^theta A)^{-1-1/theta}.
      const double theta = *model.theta();
      const double sx = frechet_sf(x);
      const double sy = frechet_sf(y);
      if (sx < kConditioningGuard) {
        throw ConditioningDegenerateError("conditional_F3: marginal density underflow");
      }
      const double inner = 1.0 + std::pow(sx / sy, theta) - std::pow(sx, theta);
      return std::clamp(1.0 - std::pow(inner, -1.0 - 1.0 / theta), 0.0, 1.0);
    }
    case Family::LogisticFrechet: {
      const double gamma = *model.gamma();
      const double v = logistic_V(gamma, x, y);
      const double shape = std::pow(1.0 + std::pow(x / y, 1.0 / gamma), gamma - 1.0);
      return std::clamp(std::exp(1.0 / x - v) * shape, 0.0, 1.0);
    }
    case Family::GaussianBivariate: {
      const double rho = *model.rho();
      return normal::cdf((y - rho * x) / gaussian_scale(rho));
    }
  }
  return 0.0;
}

double bsv_L(const ModelSpec& model, double x, double y) {
  require_tail_family(model, "bsv_L");
  require_positive_args(model, x, y, "bsv_L");
  if (model.family() == Family::SurvivalClaytonPareto) {
    const double theta = *model.theta();
    const double base = std::pow(x, theta) + std::pow(y, theta) - 1.0;
    if (!(base > 0.0)) throw DomainError("bsv_L: requires x^theta + y^theta > 1");
    return std::pow(base, -1.0 / theta) * std::sqrt(x * y);
  }
  // Logistic: L is exactly homogeneous, so it coincides with ctilde.
  return ctilde(model, x, y);
}

double ctilde(const ModelSpec& model, double x, double y) {
  require_tail_family(model, "ctilde");
  require_positive_args(model, x, y, "ctilde");
  if (model.family() == Family::SurvivalClaytonPareto) {
    // g(t) = t^{1/2} (1 + t^theta)^{-1/theta}, symmetric under t -> 1/t.
    const double theta = *model.theta();
    const double t = std::min(x / y, y / x);
    return std::sqrt(t) * std::pow(1.0 + std::pow(t, theta), -1.0 / theta);
  }
  // (xy)^{-1/2}(x+y) - (xy)^{1/2} V(x,y) is symmetric; with t = min ratio it
  // equals t^{1/2} - t^{-1/2} ((1 + t^{1/g})^g - 1).
  const double gamma = *model.gamma();
  const double t = std::min(x / y, y / x);
  const double root = std::sqrt(t);
  const double excess = std::expm1(gamma * std::log1p(std::pow(t, 1.0 / gamma)));
  return root - excess / root;
}

double ctilde_dx(const ModelSpec& model, double x, double y) {
  const double c = ctilde(model, x, y);
  if (model.family() == Family::SurvivalClaytonPareto) {
    const double theta = *model.theta();
    return c / x * (0.5 - 1.0 / (1.0 + std::pow(y / x, theta)));
  }
  const double gamma = *model.gamma();
  const double v = logistic_V(gamma, x, y);
  return 0.5 / std::sqrt(x * y) *
         (1.0 - y / x - y * v * (1.0 - 2.0 * std::pow(x * v, -1.0 / gamma)));
}

double r_limit(const ModelSpec& model, double x, double y) {
  return ctilde(model, x, y) / tail_summary(model).lambda_u;
}

double r_limit_dx(const ModelSpec& model, double x, double y) {
  return ctilde_dx(model, x, y) / tail_summary(model).lambda_u;
}

TailSummary tail_summary(const ModelSpec& model) {
  switch (model.family()) {
    case Family::SurvivalClaytonPareto: {
      const double lambda = std::pow(2.0, -1.0 / *model.theta());
      return {0.5, 0.5, 1.0, lambda, true};
    }
    case Family::LogisticFrechet: {
      const double lambda = 2.0 - std::pow(2.0, *model.gamma());
      return {0.5, 0.5, 1.0, lambda, lambda > 0.0};
    }
    case Family::GaussianBivariate: {
      // Ledford-Tawn coefficient for the normal copula, split evenly.
      const double eta = 0.5 * (1.0 + *model.rho());
      const double half = 0.5 / eta;
      return {half, half, 1.0 / (half + half), 0.0, false};
    }
  }
  return {};
}

namespace {

struct Tails {
  double cdf;
  double sf;
};

Tails source_tails(const ModelSpec& model, double v, Scale from) {
  if (std::isnan(v)) throw DomainError("marginal_transform: NaN input");
  switch (from) {
    case Scale::ParetoLomax: {
      const double nu = require_param(model.nu(), "nu");
      if (v < 0.0) throw DomainError("marginal_transform: Pareto-Lomax value must be >= 0");
      const double log_sf = -nu * std::log1p(v);
      return {-std::expm1(log_sf), std::exp(log_sf)};
    }
    case Scale::UnitFrechet:
      if (!(v > 0.0)) throw DomainError("marginal_transform: Frechet value must be > 0");
      return {std::exp(-1.0 / v), frechet_sf(v)};
    case Scale::StandardNormal:
      return {normal::cdf(v), normal::sf(v)};
    case Scale::UnitExponential:
      if (v < 0.0) throw DomainError("marginal_transform: exponential value must be >= 0");
      return {-std::expm1(-v), std::exp(-v)};
  }
  throw DomainError("marginal_transform: unknown scale");
}

}  // namespace

double marginal_transform(const ModelSpec& model, double value, Scale from, Scale to) {
  if (to == Scale::ParetoLomax) require_param(model.nu(), "nu");
  if (from == to) {
    source_tails(model, value, from);  // support check only
    return value;
  }
  Tails t = source_tails(model, value, from);
  t.cdf = std::clamp(t.cdf, kProbabilityGuard, 1.0 - kProbabilityGuard);
  t.sf = std::clamp(t.sf, kProbabilityGuard, 1.0 - kProbabilityGuard);
  const bool use_sf = t.sf < t.cdf;
  switch (to) {
    case Scale::ParetoLomax: {
      const double nu = *model.nu();
      const double log_sf = use_sf ? std::log(t.sf) : std::log1p(-t.cdf);
      return std::expm1(-log_sf / nu);
    }
    case Scale::UnitFrechet:
      return use_sf ? -1.0 / std::log1p(-t.sf) : -1.0 / std::log(t.cdf);
    case Scale::StandardNormal:
      return use_sf ? -normal::quantile(t.sf) : normal::quantile(t.cdf);
    case Scale::UnitExponential:
      return use_sf ? -std::log(t.sf) : -std::log1p(-t.cdf);
  }
  throw DomainError("marginal_transform: unknown scale");
}

}  // namespace tailcord
