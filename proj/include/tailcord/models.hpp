#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tailcord {

enum class Family { SurvivalClaytonPareto, LogisticFrechet, GaussianBivariate };

/// Marginal scales a value can live on.
enum class Scale { ParetoLomax, UnitFrechet, StandardNormal, UnitExponential };

std::string_view to_string(Family family);
std::string_view to_string(Scale scale);
Family family_from_string(std::string_view name);
Scale scale_from_string(std::string_view name);

/// A bivariate family with exactly the parameters it needs.
///
/// Survival Clayton / Pareto-Lomax and the symmetric logistic model are
/// described on the unit Frechet scale; the Gaussian model on the standard
/// normal scale. Construct through the named factories, which enforce
/// theta > 0, nu > 0, 0 < gamma < 1 and 0 <= rho < 1.
class ModelSpec {
 public:
  static ModelSpec survival_clayton(double theta, double nu = 1.0);
  static ModelSpec logistic(double gamma);
  static ModelSpec gaussian(double rho);

  /// Validating constructor for config input: every parameter the family
  /// needs must be present and nothing else may be.
  static ModelSpec from_parameters(Family family, std::optional<double> theta,
                                   std::optional<double> nu, std::optional<double> gamma,
                                   std::optional<double> rho);

  Family family() const noexcept { return family_; }
  std::optional<double> theta() const noexcept { return theta_; }
  std::optional<double> nu() const noexcept { return nu_; }
  std::optional<double> gamma() const noexcept { return gamma_; }
  std::optional<double> rho() const noexcept { return rho_; }

  /// Scale of joint_survival / conditional arguments.
  Scale working_scale() const noexcept;
  /// Scale sample_model emits.
  Scale sample_scale() const noexcept;

  std::string describe() const;

  bool operator==(const ModelSpec&) const = default;

 private:
  ModelSpec() = default;

  Family family_ = Family::GaussianBivariate;
  std::optional<double> theta_;
  std::optional<double> nu_;
  std::optional<double> gamma_;
  std::optional<double> rho_;
};

struct TailSummary {
  double alpha;
  double beta;
  double eta;
  double lambda_u;
  bool asymptotically_dependent;
};

// All (x, y) arguments below are on model.working_scale().

double marginal_cdf(const ModelSpec& model, double x);
/// Upper tail 1 - F_X(x), computed without cancellation.
double marginal_sf(const ModelSpec& model, double x);
double marginal_pdf(const ModelSpec& model, double x);

/// P(X > x, Y > y).
double joint_survival(const ModelSpec& model, double x, double y);
/// P(X <= x, Y <= y).
double joint_cdf(const ModelSpec& model, double x, double y);

/// P(Y <= y | X > x).
double conditional_F1(const ModelSpec& model, double y, double x);
/// P(Y <= y | X <= x).
double conditional_F2(const ModelSpec& model, double y, double x);
/// P(Y <= y | X = x).
double conditional_F3(const ModelSpec& model, double y, double x);

/// log F1 and log F2, accurate when the conditional is close to one.
double log_conditional_F1(const ModelSpec& model, double y, double x);
double log_conditional_F2(const ModelSpec& model, double y, double x);

/// Bivariate slowly varying factor of the joint tail, F_bar ~ L x^-alpha y^-beta.
/// Families 1-2 only. Family 1 needs x^theta + y^theta > 1.
double bsv_L(const ModelSpec& model, double x, double y);

/// Limit of L(n x, n y); homogeneous of degree 0.
double ctilde(const ModelSpec& model, double x, double y);
/// d ctilde / dx in closed form.
double ctilde_dx(const ModelSpec& model, double x, double y);
/// ctilde / lambda_u.
double r_limit(const ModelSpec& model, double x, double y);
double r_limit_dx(const ModelSpec& model, double x, double y);

TailSummary tail_summary(const ModelSpec& model);

/// Probability integral transform between scales. Pareto-Lomax uses the
/// model's nu. Probabilities are clamped to [1e-15, 1 - 1e-15] first.
double marginal_transform(const ModelSpec& model, double value, Scale from, Scale to);

/// Lower and upper clamp applied before every inverse-cdf map.
inline constexpr double kProbabilityGuard = 1e-15;
/// Conditioning events with probability below this raise
/// ConditioningDegenerateError.
inline constexpr double kConditioningGuard = 1e-300;

}  // namespace tailcord
