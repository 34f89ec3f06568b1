#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tailcord/concomitants.hpp"
#include "tailcord/models.hpp"
#include "tailcord/sampler.hpp"

namespace tailcord {

using Point2 = std::pair<double, double>;

/// Fraction of points dominated (componentwise <=) by each evaluation site.
std::vector<double> ecdf_bivariate(const std::vector<Point2>& points,
                                   const std::vector<Point2>& eval_at);

/// Empirical upper-tail dependence at level q in (0, 1).
double lambda_u_hat(const BivariateBatch& batch, double q);

struct PointError {
  double v1 = 0.0;
  double v2 = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double abs_error = 0.0;
};

struct ValidationReport {
  std::vector<PointError> point_errors;
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  std::array<double, 3> quartiles{};  // q25, q50, q75 of abs errors
  std::vector<std::pair<double, double>> marginal_l1_v1;
  std::vector<std::pair<double, double>> marginal_l1_v2;
  ModelSpec model = ModelSpec::gaussian(0.0);
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t replicate_count = 0;
  std::uint64_t seed = 0;
};

/// Theoretical cdf at each requested (v1, v2), on the rescaled axes.
using SurfaceProvider = std::function<std::vector<double>(const std::vector<Point2>&)>;

/// Argument standing in for +inf when a marginal is read off a joint cdf.
inline constexpr double kMarginalCap = 1e6;
inline constexpr std::size_t kMarginalGridSize = 100;

/// (V1, V2) for split k of every record, divided by (a_tilde_n, n) = (n, n)
/// for families 1-2 and left unchanged for the Gaussian model.
std::vector<Point2> rescaled_splits(const std::vector<ReplicateRecord>& records, std::size_t k);

/// Compares the bivariate ecdf of the rescaled splits with provider at the
/// sample points, plus marginal L1 curves on 100-point grids per axis.
ValidationReport validate_against_limit(const std::vector<ReplicateRecord>& records,
                                        const SurfaceProvider& provider, std::size_t k);

}  // namespace tailcord
