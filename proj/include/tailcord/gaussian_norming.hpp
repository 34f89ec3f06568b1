#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tailcord/sampler.hpp"

namespace tailcord {

/// Norming sequences for the bivariate normal with correlation rho:
/// maxima (a_n, b_n), concomitants on the normal scale (a_tilde_n, b_tilde_n)
/// and on the unit exponential scale (a_tilde_nE, b_tilde_nE).
struct NormingConstants {
  double n = 0.0;
  double log_n = 0.0;
  double rho = 0.0;
  double a_n = 0.0;
  double b_n = 0.0;
  double a_tilde_n = 0.0;
  double b_tilde_n = 0.0;
  double a_tilde_nE = 0.0;
  double b_tilde_nE = 0.0;
};

/// Requires n >= 2 and 0 <= rho < 1.
NormingConstants norming_constants(double n, double rho);
/// Same, parametrized by log n so that n itself may overflow.
NormingConstants norming_constants_from_log(double log_n, double rho);

struct WTModelPoint {
  double zeta1 = 0.0;
  double kappa = 0.0;
  double L1 = 0.0;
};

/// (zeta1 + 1 - 2 rho sqrt(zeta1)) / (1 - rho^2). Requires rho^2 <= min(zeta1, 1).
double wt_kappa(double rho, double zeta1);
/// Slowly varying factor of the joint tail at (n, n^zeta1) on the exponential
/// scale. Requires rho^2 < min(zeta1, 1) and zeta1 < 1/rho^2.
double wt_L1(double n, double rho, double zeta1);
WTModelPoint wt_point(double n, double rho, double zeta1);

/// exp(-(rho y)^2 / 2) / (y sqrt(2 pi)).
double gaussian_conditional_tail_limit(double rho, double y);
/// rho (1 - Phi(rho y)).
double mills_approx(double rho, double y);

struct GaussianTailPoint {
  double y = 0.0;
  double empirical = 0.0;
  double limit = 0.0;
  double mills = 0.0;
  double rel_gap = 0.0;  // |empirical - limit| / limit
};

struct GaussianTailReport {
  double rho = 0.0;
  double threshold_u = 0.0;
  std::size_t sample_count = 0;
  SeedSpec seed;
  NormingConstants constants;
  std::vector<GaussianTailPoint> points;
};

/// Draws sample_count pairs given X_E > threshold_u (log n = threshold_u) and
/// compares P(Y_E > a_tilde_nE y + b_tilde_nE) with the limit at each y.
/// Every y must have limit <= 1. One sample is shared across the grid.
GaussianTailReport validate_gaussian_limit(double rho, double threshold_u,
                                           const std::vector<double>& y_grid,
                                           std::size_t sample_count, const SeedSpec& seed);

}  // namespace tailcord
