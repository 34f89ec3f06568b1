#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tailcord/errors.hpp"
#include "tailcord/models.hpp"
#include "tailcord/sampler.hpp"

using namespace tailcord;

namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double fraction(const BivariateBatch& b, double x, double y) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < b.size(); ++i) count += (b.xs[i] <= x && b.ys[i] <= y) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(b.size());
}

}  // namespace

TEST_CASE("positive stable draws") {
  const std::vector<double> s = sample_positive_stable({7, 0}, 0.5, 100000);
  double laplace = 0.0;
  for (double v : s) laplace += std::exp(-v);
  CHECK(std::abs(laplace / 1e5 - std::exp(-1.0)) <= 0.01);

  std::vector<double> near_one = sample_positive_stable({7, 1}, 0.999, 20001);
  std::nth_element(near_one.begin(), near_one.begin() + 10000, near_one.end());
  CHECK(near_one[10000] >= 0.8);
  CHECK(near_one[10000] <= 1.25);

  CHECK(sample_positive_stable({7, 0}, 0.5, 1000) == sample_positive_stable({7, 0}, 0.5, 1000));
  CHECK_THROWS_AS(sample_positive_stable({7, 0}, 1.0, 10), DomainError);
  CHECK_THROWS_AS(sample_positive_stable({7, 0}, 0.0, 10), DomainError);
}

TEST_CASE("streams are deterministic and distinct") {
  const ModelSpec m = ModelSpec::gaussian(0.5);
  const BivariateBatch a = sample_model(m, 100000, {3, 0});
  const BivariateBatch b = sample_model(m, 100000, {3, 0});
  const BivariateBatch c = sample_model(m, 100000, {3, 1});
  CHECK(a.xs == b.xs);
  CHECK(a.ys == b.ys);
  CHECK(std::abs(correlation(a.xs, c.xs)) < 0.01);
}

TEST_CASE("logistic pairs have unit Frechet margins and the logistic cdf") {
  const BivariateBatch b = sample_model(ModelSpec::logistic(0.5), 1000000, {11, 0});
  CHECK(b.scale == Scale::UnitFrechet);
  std::size_t below = 0;
  for (double x : b.xs) below += x <= 1.0 ? 1 : 0;
  CHECK(std::abs(static_cast<double>(below) / 1e6 - std::exp(-1.0)) < 0.003);
  CHECK(std::abs(fraction(b, 1.0, 1.0) - std::exp(-std::sqrt(2.0))) < 0.003);
  for (auto [x, y] : {std::pair{0.5, 2.0}, std::pair{2.0, 3.0}, std::pair{5.0, 0.7}}) {
    const double v = std::pow(std::pow(x, -2.0) + std::pow(y, -2.0), 0.5);
    const double p = std::exp(-v);
    CHECK(std::abs(fraction(b, x, y) - p) < 3.0 * std::sqrt(p * (1 - p) / 1e6) + 1e-4);
  }
}

TEST_CASE("Clayton frailty pairs follow the survival copula") {
  const ModelSpec m = ModelSpec::survival_clayton(2.0, 1.5);
  const BivariateBatch b = sample_model(m, 1000000, {12, 0});
  CHECK(b.scale == Scale::ParetoLomax);
  // S = (1 + X)^-nu is the marginal survival probability.
  std::size_t joint = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double s1 = std::pow(1.0 + b.xs[i], -1.5);
    const double s2 = std::pow(1.0 + b.ys[i], -1.5);
    joint += (s1 < 0.5 && s2 < 0.5) ? 1 : 0;
  }
  // (S1, S2) has the Clayton copula C(u, v) = (u^-2 + v^-2 - 1)^{-1/2}.
  const double p = std::pow(2.0 * 4.0 - 1.0, -0.5);
  CHECK(std::abs(static_cast<double>(joint) / 1e6 - p) < 3.0 * std::sqrt(p * (1 - p) / 1e6));
}

TEST_CASE("Gaussian pairs have the requested correlation") {
  const BivariateBatch b = sample_model(ModelSpec::gaussian(0.5), 1000000, {13, 0});
  CHECK(b.scale == Scale::StandardNormal);
  CHECK(std::abs(correlation(b.xs, b.ys) - 0.5) < 0.005);
}

TEST_CASE("tail-conditioned Gaussian sampling") {
  const double u = std::log(1e5);
  const BivariateBatch b = sample_tail_conditioned_gaussian(0.5, u, 1000000, {14, 0});
  CHECK(b.scale == Scale::UnitExponential);
  double excess = 0.0;
  bool all_above = true;
  for (double x : b.xs) {
    excess += x - u;
    all_above = all_above && x > u;
  }
  CHECK(all_above);
  CHECK(std::abs(excess / 1e6 - 1.0) < 0.01);

  // u = 0 is unconditional: Y_E is unit exponential.
  const BivariateBatch free = sample_tail_conditioned_gaussian(0.5, 0.0, 200000, {14, 1});
  CHECK(std::accumulate(free.ys.begin(), free.ys.end(), 0.0) / 2e5 == doctest::Approx(1.0).epsilon(0.01));

  CHECK_THROWS_AS(sample_tail_conditioned_gaussian(0.5, 701.0, 10, {14, 2}), PrecisionError);
}
