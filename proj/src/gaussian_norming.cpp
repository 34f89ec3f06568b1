#include "tailcord/gaussian_norming.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tailcord/errors.hpp"
#include "tailcord/normal.hpp"

namespace tailcord {
namespace {

void require_rho(double rho, const char* op) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError(std::string(op) + ": rho must lie in [0, 1)");
}

}  // namespace

NormingConstants norming_constants_from_log(double log_n, double rho) {
  require_rho(rho, "norming_constants");
  if (!(log_n >= std::numbers::ln2)) throw DomainError("norming_constants: n must be >= 2");
  const double root = std::sqrt(2.0 * log_n);
  const double shift = std::log(4.0 * std::numbers::pi * log_n);
  const double scale = std::sqrt((1.0 - rho) * (1.0 + rho));
  const double rho2 = rho * rho;

  NormingConstants c;
  c.log_n = log_n;
  c.n = std::exp(log_n);
  c.rho = rho;
  c.a_n = 1.0 / root;
  c.b_n = root - 0.5 * shift / root;
  c.a_tilde_n = scale;
  c.b_tilde_n = rho * c.b_n;
  c.a_tilde_nE = rho * scale * c.b_n;
  c.b_tilde_nE = rho2 * log_n - 0.5 * rho2 * shift + rho2 / 16.0 * shift * shift / log_n;
  return c;
}

NormingConstants norming_constants(double n, double rho) {
  if (!(n >= 2.0)) throw DomainError("norming_constants: n must be >= 2");
  NormingConstants c = norming_constants_from_log(std::log(n), rho);
  c.n = n;
  return c;
}

double wt_kappa(double rho, double zeta1) {
  require_rho(rho, "wt_kappa");
  if (!(zeta1 > 0.0) || rho * rho > std::min(zeta1, 1.0)) {
    throw DomainError("wt_kappa: requires rho^2 <= min(zeta1, 1)");
  }
  return (zeta1 + 1.0 - 2.0 * rho * std::sqrt(zeta1)) / ((1.0 - rho) * (1.0 + rho));
}

double wt_L1(double n, double rho, double zeta1) {
  require_rho(rho, "wt_L1");
  if (!(n > 1.0)) throw DomainError("wt_L1: n must be > 1");
  const double rho2 = rho * rho;
  if (!(zeta1 > 0.0) || !(rho2 < std::min(zeta1, 1.0))) {
    throw DomainError("wt_L1: requires rho^2 < min(zeta1, 1)");
  }
  const double s = std::sqrt(zeta1);
  const double far = 1.0 - rho * s;
  if (!(far > 0.0)) throw DomainError("wt_L1: requires zeta1 < 1/rho^2");
  const double one_minus = (1.0 - rho) * (1.0 + rho);
  const double log_term = std::log(4.0 * std::numbers::pi * std::log(n));
  const double e1 = (2.0 * rho2 - rho * (s + 1.0 / s)) / (2.0 * one_minus);
  const double e2 = (1.0 - rho / s) / (2.0 * one_minus);
  return std::exp(e1 * log_term) * std::pow(zeta1, e2) * std::pow(one_minus, 1.5) /
         ((s - rho) * far);
}

WTModelPoint wt_point(double n, double rho, double zeta1) {
  return {zeta1, wt_kappa(rho, zeta1), wt_L1(n, rho, zeta1)};
}

double gaussian_conditional_tail_limit(double rho, double y) {
  require_rho(rho, "gaussian_conditional_tail_limit");
  if (!(y > 0.0)) throw DomainError("gaussian_conditional_tail_limit: y must be positive");
  const double z = rho * y;
  return std::exp(-0.5 * z * z) / (y * std::sqrt(2.0 * std::numbers::pi));
}

double mills_approx(double rho, double y) {
  require_rho(rho, "mills_approx");
  if (!(y > 0.0)) throw DomainError("mills_approx: y must be positive");
  return rho * normal::sf(rho * y);
}

GaussianTailReport validate_gaussian_limit(double rho, double threshold_u,
                                           const std::vector<double>& y_grid,
                                           std::size_t sample_count, const SeedSpec& seed) {
  require_rho(rho, "validate_gaussian_limit");
  if (!(threshold_u > 0.0)) throw DomainError("validate_gaussian_limit: threshold_u must be > 0");
  if (sample_count < 1) throw DomainError("validate_gaussian_limit: sample_count must be >= 1");
  if (y_grid.empty()) throw DomainError("validate_gaussian_limit: empty y grid");
  for (double y : y_grid) {
    if (!(y > 0.0) || gaussian_conditional_tail_limit(rho, y) > 1.0) {
      throw DomainError("validate_gaussian_limit: y=" + std::to_string(y) +
                        " is outside the range where the limit is a probability");
    }
  }

  GaussianTailReport report;
  report.rho = rho;
  report.threshold_u = threshold_u;
  report.sample_count = sample_count;
  report.seed = seed;
  report.constants = norming_constants_from_log(threshold_u, rho);

  const BivariateBatch batch = sample_tail_conditioned_gaussian(rho, threshold_u, sample_count, seed);
  std::vector<double> ys = batch.ys;
  std::sort(ys.begin(), ys.end());
  const double total = static_cast<double>(ys.size());
  for (double y : y_grid) {
    const double cut = report.constants.a_tilde_nE * y + report.constants.b_tilde_nE;
    const auto above = ys.end() - std::upper_bound(ys.begin(), ys.end(), cut);
    GaussianTailPoint p;
    p.y = y;
    p.empirical = static_cast<double>(above) / total;
    p.limit = gaussian_conditional_tail_limit(rho, y);
    p.mills = mills_approx(rho, y);
    p.rel_gap = std::abs(p.empirical - p.limit) / p.limit;
    report.points.push_back(p);
  }
  return report;
}

}  // namespace tailcord
