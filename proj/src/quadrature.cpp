#include "tailcord/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>
#include <string>

#include "tailcord/errors.hpp"

namespace tailcord {
namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

double trampoline(double x, void* params) {
  const auto& f = *static_cast<const std::function<double(double)>*>(params);
  const double v = f(x);
  return std::isfinite(v) ? v : 0.0;
}

// GSL aborts by default; errors are reported through return codes instead.
const bool kHandlerOff = [] {
  gsl_set_error_handler_off();
  return true;
}();

// Integrand on (0, 1) equivalent to f on (0, inf). The result refers to f,
// so f must outlive it.
std::function<double(double)> fold(const std::function<double(double)>& f, Substitution sub) {
  std::function<double(double)> folded;
  if (sub == Substitution::RationalT) {
    folded = [&f](double t) {
      if (t <= 0.0 || t >= 1.0) return 0.0;
      const double one_minus = 1.0 - t;
      return f(t / one_minus) / (one_minus * one_minus);
    };
  } else {
    // x = 1/u, dx = du / u^2 with u = t/(1-t): dx = dt / t^2.
    folded = [&f](double t) {
      if (t <= 0.0 || t >= 1.0) return 0.0;
      return f((1.0 - t) / t) / (t * t);
    };
  }
  return folded;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("QuadratureConfig: tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config) {
  config.validate();
  (void)kHandlerOff;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(config.max_subdivisions));
  if (!ws) throw Error("integrate: cannot allocate quadrature workspace");

  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double value = 0.0;
  double error = 0.0;
  const int status = gsl_integration_qag(&gf, a, b, config.abs_tol, config.rel_tol,
                                         config.max_subdivisions, GSL_INTEG_GAUSS15, ws.get(),
                                         &value, &error);
  if (status != GSL_SUCCESS) {
    throw QuadratureError(std::string("integrate: ") + gsl_strerror(status), value, error);
  }
  return {value, error};
}

QuadratureResult integrate_segments(const std::function<double(double)>& f,
                                    std::span<const double> points,
                                    const QuadratureConfig& config) {
  if (points.size() < 2) throw DomainError("integrate_segments: need at least two points");
  QuadratureConfig piece = config;
  piece.abs_tol = config.abs_tol / static_cast<double>(points.size() - 1);
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    try {
      const QuadratureResult r = integrate(f, points[i], points[i + 1], piece);
      total.value += r.value;
      total.error += r.error;
    } catch (const QuadratureError& e) {
      throw QuadratureError(e.what(), total.value + e.estimate(), total.error + e.error());
    }
  }
  return total;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     const QuadratureConfig& config,
                                     std::span<const double> breakpoints) {
  std::vector<double> ts{0.0, 1.0};
  for (double x : breakpoints) {
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    ts.push_back(config.substitution == Substitution::RationalT ? x / (1.0 + x)
                                                                : 1.0 / (1.0 + x));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return integrate_segments(fold(f, config.substitution), ts, config);
}


}  // namespace tailcord
