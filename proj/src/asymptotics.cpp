#include "tailcord/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "tailcord/errors.hpp"
#include "tailcord/normal.hpp"

namespace tailcord {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnderflow = -745.0;

void require_positive(double x, double y, const char* op) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError(std::string(op) + ": arguments must be positive");
}

bool dependent(const ModelSpec& model, DependenceIndicator indicator) {
  return indicator == DependenceIndicator::FromModel && tail_summary(model).lambda_u > 0.0;
}

// log H1(y|x) = log(1 - ctilde sqrt(x/y)).
double log_H1(const ModelSpec& model, double y, double x) {
  if (y == kInf) return 0.0;
  const double drop = ctilde(model, x, y) * std::sqrt(x / y);
  return drop >= 1.0 ? -kInf : std::log1p(-drop);
}

double log_F2_limit(const ModelSpec& model, double y, double x, DependenceIndicator indicator) {
  if (y == kInf) return 0.0;
  if (!dependent(model, indicator)) return -1.0 / y;
  return -(1.0 - ctilde(model, x, y) * std::sqrt(y / x)) / y;
}

double log_H2(const ModelSpec& model, double y, double x) {
  const double f3 = F3_limit(model, y, x);
  if (!(f3 > 0.0)) return -kInf;
  return log_F2_limit(model, y, x, DependenceIndicator::FromModel) + std::log(f3);
}

// Points around the bulk of a Gamma(shape) variable, where most mass lies.
std::vector<double> gamma_bulk_points(double shape) {
  const double sd = std::sqrt(shape);
  std::vector<double> out;
  for (double c : {-8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 16.0}) {
    const double u = shape + c * sd;
    if (u > 0.0) out.push_back(u);
  }
  return out;
}

// Sample point x on the working scale whose upper tail is p.
double quantile_from_upper(const ModelSpec& model, double p) {
  if (model.working_scale() == Scale::StandardNormal) {
    return normal::quantile_from_log_sf(std::log(p));
  }
  return -1.0 / std::log1p(-p);
}

template <class Eval>
LimitSurface evaluate_surface(LimitSurface surface, unsigned threads, const Eval& eval) {
  const std::size_t count = surface.grid.size();
  surface.values.assign(count, 0.0);
  surface.errors.assign(count, 0.0);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned worker) {
    try {
      for (std::size_t i = worker; i < count; i += workers) {
        const auto [v1, v2] = surface.grid[i];
        try {
          const QuadratureResult r = eval(v1, v2);
          surface.values[i] = std::clamp(r.value, 0.0, 1.0);
          surface.errors[i] = r.error;
        } catch (const QuadratureError& e) {
          surface.values[i] = std::clamp(e.estimate(), 0.0, 1.0);
          surface.errors[i] = -1.0;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  return surface;
}

}  // namespace

double H1(const ModelSpec& model, double y, double x) {
  require_positive(x, y, "H1");
  return std::clamp(std::exp(log_H1(model, y, x)), 0.0, 1.0);
}

double H1_closed_form(const ModelSpec& model, double y, double x) {
  require_positive(x, y, "H1_closed_form");
  if (y == kInf) return 1.0;
  switch (model.family()) {
    case Family::SurvivalClaytonPareto: {
      const double theta = *model.theta();
      return 1.0 - std::pow(1.0 + std::pow(y / x, theta), -1.0 / theta);
    }
    case Family::LogisticFrechet: {
      const double gamma = *model.gamma();
      return std::pow(1.0 + std::pow(x / y, 1.0 / gamma), gamma) - x / y;
    }
    case Family::GaussianBivariate:
      break;
  }
  throw UnsupportedFamilyError("H1_closed_form: no limit law for the Gaussian model");
}

double F2_limit(const ModelSpec& model, double y, double x, DependenceIndicator indicator) {
  require_positive(x, y, "F2_limit");
  return std::clamp(std::exp(log_F2_limit(model, y, x, indicator)), 0.0, 1.0);
}

double F3_limit(const ModelSpec& model, double y, double x, DependenceIndicator indicator) {
  require_positive(x, y, "F3_limit");
  if (y == kInf || !dependent(model, indicator)) return 1.0;
  const double c = ctilde(model, x, y);
  const double slope = ctilde_dx(model, x, y) - 0.5 * c / x;
  return std::clamp(1.0 + x * std::sqrt(x / y) * slope, 0.0, 1.0);
}

double H2(const ModelSpec& model, double y, double x) {
  require_positive(x, y, "H2");
  return std::clamp(std::exp(log_H2(model, y, x)), 0.0, 1.0);
}

double H2_closed_form(const ModelSpec& model, double y, double x) {
  require_positive(x, y, "H2_closed_form");
  if (y == kInf) return 1.0;
  switch (model.family()) {
    case Family::SurvivalClaytonPareto: {
      const double theta = *model.theta();
      const double base = 1.0 + std::pow(y / x, theta);
      return (1.0 - std::pow(base, -1.0 - 1.0 / theta)) *
             std::exp(-1.0 / y + std::pow(base, -1.0 / theta));
    }
    case Family::LogisticFrechet: {
      const double gamma = *model.gamma();
      const double base = 1.0 + std::pow(y / x, -1.0 / gamma);
      return std::pow(base, gamma - 1.0) * std::exp(-(std::pow(base, gamma) - 1.0) / x);
    }
    case Family::GaussianBivariate:
      break;
  }
  throw UnsupportedFamilyError("H2_closed_form: no closed form for the Gaussian model");
}

double a_tilde_n(const ModelSpec& model, double n) {
  if (model.family() == Family::GaussianBivariate) {
    throw UnsupportedFamilyError("a_tilde_n: the limit theorem does not cover the Gaussian model");
  }
  if (!(n >= 1.0)) throw DomainError("a_tilde_n: n must be >= 1");
  const TailSummary t = tail_summary(model);
  return std::pow(n, (1.0 - t.alpha) / t.beta);
}

void require_admissible_norming(const ModelSpec& model, double n, double a_tilde, double b_tilde) {
  const double expected = a_tilde_n(model, n);
  if (std::abs(a_tilde - expected) > 1e-12 * expected || b_tilde != 0.0) {
    throw DomainError("require_admissible_norming: only a_tilde_n = n^{(1-alpha)/beta}, "
                      "b_tilde_n = 0 is implemented");
  }
}

QuadratureResult joint_limit_cdf(const ModelSpec& model, std::size_t k, double v1, double v2,
                                 const QuadratureConfig& quad) {
  if (k < 1) throw DomainError("joint_limit_cdf: k must be >= 1");
  require_positive(v1, v2, "joint_limit_cdf");
  if (model.family() == Family::GaussianBivariate) {
    throw UnsupportedFamilyError("joint_limit_cdf: no nondegenerate limit for the Gaussian model");
  }
  const double kk = static_cast<double>(k);
  const double log_norm = std::lgamma(kk + 1.0);
  const std::function<double(double)> integrand = [&](double x) {
    if (!(x > 0.0) || 1.0 / x > -kUnderflow) return 0.0;
    const double h1 = log_H1(model, v1, x);
    if (h1 == -kInf) return 0.0;
    const double log_value = kk * h1 + log_H2(model, v2, x) - (kk + 2.0) * std::log(x) - 1.0 / x -
                             log_norm;
    return log_value < kUnderflow ? 0.0 : std::exp(log_value);
  };
  // u = 1/x is Gamma(k+1) under the weight; split there and at the arguments.
  std::vector<double> breaks;
  for (double u : gamma_bulk_points(kk + 1.0)) breaks.push_back(1.0 / u);
  breaks.push_back(v1);
  breaks.push_back(v2);
  return integrate_half_line(integrand, quad, breaks);
}

QuadratureResult finite_sample_cdf(const ModelSpec& model, std::size_t n, std::size_t k,
                                   double v1, double v2, const QuadratureConfig& quad) {
  if (k < 1 || k + 1 > n) {
    throw DomainError("finite_sample_cdf: k=" + std::to_string(k) + " outside [1, n-1] for n=" +
                      std::to_string(n));
  }
  if (std::isnan(v1) || std::isnan(v2)) throw DomainError("finite_sample_cdf: NaN argument");
  if (model.working_scale() == Scale::UnitFrechet && (!(v1 > 0.0) || !(v2 > 0.0))) {
    return {0.0, 0.0};
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double below = nn - kk - 1.0;
  const double log_norm = std::lgamma(nn + 1.0) - std::lgamma(nn - kk) - std::lgamma(kk + 1.0);

  // w = n (1 - F_X(X_(n-k))) has density Beta(k+1, n-k) stretched to (0, n).
  const std::function<double(double)> integrand = [&](double w) {
    if (!(w > 0.0) || !(w < nn)) return 0.0;
    const double p = w / nn;
    const double log_weight = log_norm + below * std::log1p(-p) + kk * std::log(p) - std::log(nn);
    if (log_weight < kUnderflow) return 0.0;
    const double x = quantile_from_upper(model, p);
    try {
      const double f3 = conditional_F3(model, v2, x);
      if (!(f3 > 0.0)) return 0.0;
      double log_h = kk * log_conditional_F1(model, v1, x) + std::log(f3);
      if (below > 0.0) log_h += below * log_conditional_F2(model, v2, x);
      const double log_value = log_weight + log_h;
      return log_value < kUnderflow ? 0.0 : std::exp(log_value);
    } catch (const ConditioningDegenerateError&) {
      return 0.0;
    }
  };
  std::vector<double> points{0.0};
  for (double w : gamma_bulk_points(kk + 1.0)) {
    if (w < nn) points.push_back(w);
  }
  points.push_back(nn);
  return integrate_segments(integrand, points, quad);
}

std::size_t LimitSurface::failures() const {
  return static_cast<std::size_t>(std::count(errors.begin(), errors.end(), -1.0));
}

std::vector<std::pair<double, double>> rectangular_grid(double v1_min, double v1_max,
                                                        double v2_min, double v2_max,
                                                        std::size_t steps) {
  if (steps < 1) throw DomainError("rectangular_grid: steps must be >= 1");
  if (v1_max < v1_min || v2_max < v2_min) throw DomainError("rectangular_grid: empty range");
  auto at = [steps](double lo, double hi, std::size_t i) {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  };
  std::vector<std::pair<double, double>> grid;
  grid.reserve(steps * steps);
  for (std::size_t i = 0; i < steps; ++i) {
    for (std::size_t j = 0; j < steps; ++j) {
      grid.emplace_back(at(v1_min, v1_max, i), at(v2_min, v2_max, j));
    }
  }
  return grid;
}

LimitSurface limit_surface(const ModelSpec& model, std::size_t k,
                           std::vector<std::pair<double, double>> grid,
                           const QuadratureConfig& quad, unsigned threads) {
  quad.validate();
  LimitSurface surface;
  surface.grid = std::move(grid);
  surface.provenance = SurfaceProvenance::AsymptoticLimit;
  surface.model = model;
  surface.k = k;
  surface.quad_tolerance = quad.abs_tol;
  return evaluate_surface(std::move(surface), threads, [&](double v1, double v2) {
    return joint_limit_cdf(model, k, v1, v2, quad);
  });
}

LimitSurface finite_sample_surface(const ModelSpec& model, std::size_t n, std::size_t k,
                                   std::vector<std::pair<double, double>> grid,
                                   const QuadratureConfig& quad, unsigned threads) {
  quad.validate();
  LimitSurface surface;
  surface.grid = std::move(grid);
  surface.provenance = SurfaceProvenance::FiniteSampleOracle;
  surface.model = model;
  surface.k = k;
  surface.n = n;
  surface.quad_tolerance = quad.abs_tol;
  return evaluate_surface(std::move(surface), threads, [&](double v1, double v2) {
    return finite_sample_cdf(model, n, k, v1, v2, quad);
  });
}

}  // namespace tailcord
