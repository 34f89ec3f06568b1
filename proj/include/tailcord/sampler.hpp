#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tailcord/models.hpp"

namespace tailcord {

/// Identifies one random stream. The generator state is a pure function of
/// both fields; replicate r of an experiment uses stream_index r.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

using Engine = std::mt19937_64;

/// Engine for a stream, keyed through std::seed_seq on all 128 seed bits.
Engine make_engine(const SeedSpec& seed);

struct BivariateBatch {
  std::vector<double> xs;
  std::vector<double> ys;
  Scale scale = Scale::UnitFrechet;
  ModelSpec model = ModelSpec::gaussian(0.0);

  std::size_t size() const noexcept { return xs.size(); }
};

/// Positive stable variates with Laplace transform exp(-t^gamma)
/// (Chambers-Mallows-Stuck / Kanter). Requires 0 < gamma < 1.
std::vector<double> sample_positive_stable(const SeedSpec& seed, double gamma,
                                           std::size_t count);

/// One positive stable draw from an existing engine.
double draw_positive_stable(Engine& engine, double gamma);

/// n i.i.d. pairs on model.sample_scale():
///  - survival Clayton: gamma frailty, mapped to Pareto-Lomax(nu);
///  - logistic: (S / W_i)^gamma, exact unit Frechet pairs;
///  - Gaussian: Y = rho X + sqrt(1 - rho^2) Z.
BivariateBatch sample_model(const ModelSpec& model, std::size_t n, const SeedSpec& seed);

/// Gaussian pairs on the unit-exponential scale conditioned on X_E > threshold_u.
/// X_E = threshold_u + Exp(1) is exact by memorylessness; the normal scale is
/// reached through a log-tail quantile. Throws PrecisionError past X_E = 700.
BivariateBatch sample_tail_conditioned_gaussian(double rho, double threshold_u,
                                                std::size_t count, const SeedSpec& seed);

}  // namespace tailcord
