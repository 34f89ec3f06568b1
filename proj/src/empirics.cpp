#include "tailcord/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailcord/errors.hpp"

namespace tailcord {
namespace {

// Linear interpolation quantile of sorted values (type 7).
double sorted_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo
                        : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

// Fraction of sorted values <= a.
double ecdf_sorted(const std::vector<double>& sorted, double a) {
  const auto count = std::upper_bound(sorted.begin(), sorted.end(), a) - sorted.begin();
  return static_cast<double>(count) / static_cast<double>(sorted.size());
}

double nth_order_statistic(std::vector<double> values, std::size_t rank) {
  auto it = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), it, values.end());
  return *it;
}

}  // namespace

std::vector<double> ecdf_bivariate(const std::vector<Point2>& points,
                                   const std::vector<Point2>& eval_at) {
  if (points.empty()) throw DimensionError("ecdf_bivariate: no points");
  const double total = static_cast<double>(points.size());
  std::vector<double> out;
  out.reserve(eval_at.size());
  for (const auto& [a, b] : eval_at) {
    std::size_t count = 0;
    for (const auto& [v1, v2] : points) count += (v1 <= a && v2 <= b) ? 1 : 0;
    out.push_back(static_cast<double>(count) / total);
  }
  return out;
}

double lambda_u_hat(const BivariateBatch& batch, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("lambda_u_hat: q must lie in (0, 1)");
  if (batch.xs.size() != batch.ys.size()) throw DimensionError("lambda_u_hat: length mismatch");
  const std::size_t size = batch.size();
  if (size == 0) throw EstimationError("lambda_u_hat: empty sample");
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(size)));
  if (rank < 1 || rank >= size) {
    throw EstimationError("lambda_u_hat: sample too small for q=" + std::to_string(q));
  }
  const double xq = nth_order_statistic(batch.xs, rank);
  const double yq = nth_order_statistic(batch.ys, rank);
  std::size_t above_x = 0;
  std::size_t joint = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (batch.xs[i] > xq) {
      ++above_x;
      if (batch.ys[i] > yq) ++joint;
    }
  }
  if (above_x == 0) throw EstimationError("lambda_u_hat: no observations above the x quantile");
  return static_cast<double>(joint) / static_cast<double>(above_x);
}

std::vector<Point2> rescaled_splits(const std::vector<ReplicateRecord>& records, std::size_t k) {
  if (records.empty()) throw ValidationError("rescaled_splits: no records");
  const ModelSpec& model = records.front().model;
  const std::size_t n = records.front().splits.empty() ? 0 : records.front().splits.front().n;
  const bool rescale = model.family() != Family::GaussianBivariate;
  const double scale = rescale ? static_cast<double>(n) : 1.0;

  std::vector<Point2> out;
  out.reserve(records.size());
  for (const ReplicateRecord& r : records) {
    if (!(r.model == model)) throw ValidationError("rescaled_splits: records mix models");
    auto it = std::find_if(r.splits.begin(), r.splits.end(),
                           [k](const ConcomitantSplit& s) { return s.k == k; });
    if (it == r.splits.end()) {
      throw ValidationError("rescaled_splits: k=" + std::to_string(k) + " missing from replicate " +
                            std::to_string(r.replicate_index));
    }
    if (it->n != n) throw ValidationError("rescaled_splits: records mix sample sizes");
    out.emplace_back(it->v1 / scale, it->v2 / scale);
  }
  return out;
}

ValidationReport validate_against_limit(const std::vector<ReplicateRecord>& records,
                                        const SurfaceProvider& provider, std::size_t k) {
  const std::vector<Point2> points = rescaled_splits(records, k);
  const std::vector<double> empirical = ecdf_bivariate(points, points);
  const std::vector<double> theoretical = provider(points);
  if (theoretical.size() != points.size()) {
    throw DimensionError("validate_against_limit: provider returned the wrong number of values");
  }

  ValidationReport report;
  report.model = records.front().model;
  report.n = records.front().splits.front().n;
  report.k = k;
  report.replicate_count = records.size();
  report.seed = records.front().seed.master_seed;

  std::vector<double> errors;
  errors.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double e = std::abs(empirical[i] - theoretical[i]);
    report.point_errors.push_back({points[i].first, points[i].second, empirical[i],
                                   theoretical[i], e});
    errors.push_back(e);
  }
  report.max_abs_error = *std::max_element(errors.begin(), errors.end());
  report.mean_abs_error =
      std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
  std::sort(errors.begin(), errors.end());
  report.quartiles = {sorted_quantile(errors, 0.25), sorted_quantile(errors, 0.5),
                      sorted_quantile(errors, 0.75)};

  std::vector<double> v1s;
  std::vector<double> v2s;
  for (const auto& [a, b] : points) {
    v1s.push_back(a);
    v2s.push_back(b);
  }
  std::sort(v1s.begin(), v1s.end());
  std::sort(v2s.begin(), v2s.end());

  // Each curve point is |ecdf - theory| at one grid site; the mean is the L1 error.
  auto marginal_curve = [&](const std::vector<double>& sorted, bool first_axis) {
    const std::vector<double> grid = linear_grid(sorted.front(), sorted.back(), kMarginalGridSize);
    std::vector<Point2> sites;
    sites.reserve(grid.size());
    for (double g : grid) {
      sites.push_back(first_axis ? Point2{g, kMarginalCap} : Point2{kMarginalCap, g});
    }
    const std::vector<double> theory = provider(sites);
    if (theory.size() != sites.size()) {
      throw DimensionError("validate_against_limit: provider returned the wrong number of values");
    }
    std::vector<std::pair<double, double>> curve;
    curve.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      curve.emplace_back(grid[i], std::abs(ecdf_sorted(sorted, grid[i]) - theory[i]));
    }
    return curve;
  };
  report.marginal_l1_v1 = marginal_curve(v1s, true);
  report.marginal_l1_v2 = marginal_curve(v2s, false);
  return report;
}

}  // namespace tailcord
