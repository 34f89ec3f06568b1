#include "tailcord/sampler.hpp"

#include <cmath>
#include <numbers>

#include "tailcord/errors.hpp"
#include "tailcord/normal.hpp"

namespace tailcord {
namespace {

constexpr double kMaxExponentialLevel = 700.0;

// Uniform on the open interval (0, 1).
double open_uniform(Engine& engine) {
  double u;
  do {
    u = std::generate_canonical<double, 64>(engine);
  } while (u <= 0.0);
  return u;
}

double unit_exponential(Engine& engine) { return -std::log(open_uniform(engine)); }

}  // namespace

Engine make_engine(const SeedSpec& seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.master_seed),
                    static_cast<std::uint32_t>(seed.master_seed >> 32),
                    static_cast<std::uint32_t>(seed.stream_index),
                    static_cast<std::uint32_t>(seed.stream_index >> 32)};
  return Engine(seq);
}

double draw_positive_stable(Engine& engine, double gamma) {
  const double u = std::numbers::pi * open_uniform(engine);
  const double w = unit_exponential(engine);
  // S = sin(g U) / sin(U)^{1/g} * (sin((1-g) U) / W)^{(1-g)/g}
  const double log_s = std::log(std::sin(gamma * u)) - std::log(std::sin(u)) / gamma +
                       (1.0 - gamma) / gamma * (std::log(std::sin((1.0 - gamma) * u)) - std::log(w));
  return std::exp(log_s);
}

std::vector<double> sample_positive_stable(const SeedSpec& seed, double gamma,
                                           std::size_t count) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("sample_positive_stable: gamma must lie in (0, 1)");
  }
  Engine engine = make_engine(seed);
  std::vector<double> out(count);
  for (auto& s : out) s = draw_positive_stable(engine, gamma);
  return out;
}

BivariateBatch sample_model(const ModelSpec& model, std::size_t n, const SeedSpec& seed) {
  if (n < 1) throw DomainError("sample_model: n must be >= 1");
  Engine engine = make_engine(seed);
  BivariateBatch batch{std::vector<double>(n), std::vector<double>(n), model.sample_scale(),
                       model};

  switch (model.family()) {
    case Family::SurvivalClaytonPareto: {
      const double theta = *model.theta();
      const double nu = *model.nu();
      std::gamma_distribution<double> frailty(1.0 / theta, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double g = frailty(engine);
        // Survival probabilities S = (1 + E / G)^{-1/theta}; Pareto value
        // S^{-1/nu} - 1 = expm1(log1p(E / G) / (theta nu)).
        const double ex = unit_exponential(engine);
        const double ey = unit_exponential(engine);
        batch.xs[i] = std::expm1(std::log1p(ex / g) / (theta * nu));
        batch.ys[i] = std::expm1(std::log1p(ey / g) / (theta * nu));
      }
      break;
    }
    case Family::LogisticFrechet: {
      const double gamma = *model.gamma();
      for (std::size_t i = 0; i < n; ++i) {
        const double s = draw_positive_stable(engine, gamma);
        const double wx = unit_exponential(engine);
        const double wy = unit_exponential(engine);
        batch.xs[i] = std::pow(s / wx, gamma);
        batch.ys[i] = std::pow(s / wy, gamma);
      }
      break;
    }
    case Family::GaussianBivariate: {
      const double rho = *model.rho();
      const double scale = std::sqrt((1.0 - rho) * (1.0 + rho));
      std::normal_distribution<double> gauss;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = gauss(engine);
        const double z = gauss(engine);
        batch.xs[i] = x;
        batch.ys[i] = rho * x + scale * z;
      }
      break;
    }
  }
  return batch;
}

BivariateBatch sample_tail_conditioned_gaussian(double rho, double threshold_u,
                                                std::size_t count, const SeedSpec& seed) {
  if (!(threshold_u >= 0.0)) {
    throw DomainError("sample_tail_conditioned_gaussian: threshold must be >= 0");
  }
  if (threshold_u > kMaxExponentialLevel) {
    throw PrecisionError("sample_tail_conditioned_gaussian: threshold beyond exponential level 700");
  }
  const ModelSpec model = ModelSpec::gaussian(rho);
  Engine engine = make_engine(seed);
  std::normal_distribution<double> gauss;
  const double scale = std::sqrt((1.0 - rho) * (1.0 + rho));

  BivariateBatch batch{std::vector<double>(count), std::vector<double>(count),
                       Scale::UnitExponential, model};
  for (std::size_t i = 0; i < count; ++i) {
    const double xe = threshold_u + unit_exponential(engine);
    if (xe > kMaxExponentialLevel) {
      throw PrecisionError("sample_tail_conditioned_gaussian: draw beyond exponential level 700");
    }
    const double xn = normal::quantile_from_log_sf(-xe);
    const double yn = rho * xn + scale * gauss(engine);
    batch.xs[i] = xe;
    batch.ys[i] = -normal::log_sf(yn);
  }
  return batch;
}

}  // namespace tailcord
