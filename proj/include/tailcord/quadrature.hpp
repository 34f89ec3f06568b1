#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace tailcord {

/// How (0, inf) is folded onto (0, 1) before adaptive integration.
///   RationalT:   x = t / (1 - t)
///   ReciprocalU: x = 1 / u with u = t / (1 - t)
enum class Substitution { RationalT, ReciprocalU };

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  std::size_t max_subdivisions = 200;
  Substitution substitution = Substitution::RationalT;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws QuadratureError with
/// the best estimate when the tolerance is not met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config);

/// Integral of f over (0, inf) after the configured substitution.
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     const QuadratureConfig& config);

/// Same, split at the given points of (0, inf) so that narrow peaks are not
/// missed by the first Kronrod pass. The absolute tolerance is shared
/// evenly between the pieces.
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     const QuadratureConfig& config,
                                     std::span<const double> breakpoints);

/// Adaptive integration over consecutive segments of [points.front(), points.back()].
QuadratureResult integrate_segments(const std::function<double(double)>& f,
                                    std::span<const double> points,
                                    const QuadratureConfig& config);

}  // namespace tailcord
