#pragma once

// Standard normal helpers with tail accuracy: cdf and survival through erfc,
// logarithmic survival beyond erfc's underflow point, Wichura's AS 241
// quantile and Genz's bivariate normal probability.

namespace tailcord::normal {

double pdf(double z);

/// Phi(z).
double cdf(double z);

/// 1 - Phi(z), accurate for large z.
double sf(double z);

/// log(1 - Phi(z)); finite for every finite z.
double log_sf(double z);

/// Inverse of Phi on (0, 1). Relative accuracy about 1e-16 (AS 241).
double quantile(double p);

/// z such that log(1 - Phi(z)) = log_upper. Requires log_upper < 0.
/// Used for upper-tail probabilities far below DBL_MIN's reach of 1 - p.
double quantile_from_log_sf(double log_upper);

/// P(X > h, Y > k) for a standard bivariate normal with correlation r.
double bivariate_sf(double h, double k, double r);

/// P(X <= h, Y <= k) for a standard bivariate normal with correlation r.
double bivariate_cdf(double h, double k, double r);

}  // namespace tailcord::normal
