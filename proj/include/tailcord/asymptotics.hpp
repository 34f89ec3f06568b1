#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tailcord/models.hpp"
#include "tailcord/quadrature.hpp"

namespace tailcord {

/// Whether the limits of F2^n and F3 keep the dependence term.
enum class DependenceIndicator { FromModel, Off };

// Conditional limit laws. Arguments are (y | x) on the unit Frechet scale,
// already divided by the normalizing sequences (a_tilde_n = n, b_tilde_n = 0).

/// 1 - ctilde(x, y) x^{1-alpha} y^{-beta}. Families 1-2.
double H1(const ModelSpec& model, double y, double x);
/// Family closed forms: 1 - (1 + (y/x)^theta)^{-1/theta} and x (V(x,y) - 1/y).
double H1_closed_form(const ModelSpec& model, double y, double x);

/// lim F2^n(n y | n x) = exp{-(1/y)(1 - lambda_u r(x,y) (y/x)^alpha 1_dep)}.
double F2_limit(const ModelSpec& model, double y, double x,
                DependenceIndicator indicator = DependenceIndicator::FromModel);
/// lim F3(n y | n x) = 1 + lambda_u x^{2-alpha} y^{alpha-1} (dr/dx - alpha r / x) 1_dep.
double F3_limit(const ModelSpec& model, double y, double x,
                DependenceIndicator indicator = DependenceIndicator::FromModel);

/// F2_limit * F3_limit.
double H2(const ModelSpec& model, double y, double x);

/// Published closed forms of H2. For the logistic family this matches H2
/// everywhere; the survival Clayton form carries exp(-1/y + (1+(y/x)^theta)^{-1/theta})
/// and agrees with H2 only at x = 1.
double H2_closed_form(const ModelSpec& model, double y, double x);

/// Normalizing scale for V1 admitted by the limit theorem: n^{(1-alpha)/beta}.
double a_tilde_n(const ModelSpec& model, double n);

/// Throws DomainError unless (a_tilde, b_tilde) equals (n^{(1-alpha)/beta}, 0),
/// the only pair this module implements.
void require_admissible_norming(const ModelSpec& model, double n, double a_tilde, double b_tilde);

/// lim P(V1 <= a_tilde_n v1, V2 <= n v2)
///   = int_0^inf H1^k(v1|x) H2(v2|x) x^{-k-2} e^{-1/x} / k! dx.
QuadratureResult joint_limit_cdf(const ModelSpec& model, std::size_t k, double v1, double v2,
                                 const QuadratureConfig& quad = {});

/// Exact P(V1 <= v1, V2 <= v2) for a sample of size n: E[h(v1, v2, X_(n-k))]
/// with h = F1^k F2^{n-k-1} F3, integrated against the order-statistic density.
/// (v1, v2) are on model.working_scale().
QuadratureResult finite_sample_cdf(const ModelSpec& model, std::size_t n, std::size_t k,
                                   double v1, double v2, const QuadratureConfig& quad = {});

enum class SurfaceProvenance { AsymptoticLimit, FiniteSampleOracle };

struct LimitSurface {
  std::vector<std::pair<double, double>> grid;
  std::vector<double> values;
  std::vector<double> errors;  // quadrature error estimate, -1 where it failed
  SurfaceProvenance provenance = SurfaceProvenance::AsymptoticLimit;
  ModelSpec model = ModelSpec::gaussian(0.0);
  std::size_t k = 0;
  std::size_t n = 0;  // oracle only
  double quad_tolerance = 0.0;

  std::size_t failures() const;
};

/// Rectangular grid, steps points per axis, linearly spaced.
std::vector<std::pair<double, double>> rectangular_grid(double v1_min, double v1_max,
                                                        double v2_min, double v2_max,
                                                        std::size_t steps);

LimitSurface limit_surface(const ModelSpec& model, std::size_t k,
                           std::vector<std::pair<double, double>> grid,
                           const QuadratureConfig& quad = {}, unsigned threads = 1);

LimitSurface finite_sample_surface(const ModelSpec& model, std::size_t n, std::size_t k,
                                   std::vector<std::pair<double, double>> grid,
                                   const QuadratureConfig& quad = {}, unsigned threads = 1);

}  // namespace tailcord
