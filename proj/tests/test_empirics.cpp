#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tailcord/asymptotics.hpp"
#include "tailcord/empirics.hpp"
#include "tailcord/errors.hpp"

using namespace tailcord;

TEST_CASE("bivariate ecdf") {
  CHECK(ecdf_bivariate({{1, 1}}, {{1, 1}}) == std::vector<double>{1.0});
  CHECK(ecdf_bivariate({{1, 2}, {2, 1}}, {{1.5, 1.5}}) == std::vector<double>{0.0});
  CHECK(ecdf_bivariate({{1, 2}, {2, 1}}, {{3, 3}}) == std::vector<double>{1.0});
  CHECK_THROWS_AS(ecdf_bivariate({}, {{1, 1}}), DimensionError);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::vector<Point2> pts(300);
  for (auto& p : pts) p = {z(rng), z(rng)};
  for (int i = 0; i < 50; ++i) {
    const Point2 a{z(rng), z(rng)};
    const Point2 b{a.first + 0.3, a.second + 0.1};
    CHECK(ecdf_bivariate(pts, {a})[0] <= ecdf_bivariate(pts, {b})[0]);
  }
}

TEST_CASE("empirical tail dependence") {
  BivariateBatch comonotone;
  for (int i = 0; i < 5000; ++i) {
    comonotone.xs.push_back(i * 0.37);
    comonotone.ys.push_back(i * 0.37);
  }
  for (double q : {0.5, 0.9, 0.999}) CHECK(lambda_u_hat(comonotone, q) == 1.0);
  CHECK_THROWS_AS(lambda_u_hat(comonotone, 0.99999), EstimationError);

  const BivariateBatch g = sample_model(ModelSpec::gaussian(0.5), 1000000, {21, 0});
  const double at3 = lambda_u_hat(g, 0.999);
  const double at4 = lambda_u_hat(g, 0.9999);
  CHECK(at3 < 0.35);
  CHECK(at4 < at3);
  CHECK(at3 >= 0.0);
}

TEST_CASE("validation against a surface") {
  ReplicateOptions opts;
  opts.n = 2000;
  opts.k_list = {5};
  opts.replicate_count = 200;
  opts.master_seed = 77;
  const auto records = run_replicates(ModelSpec::logistic(0.5), opts);
  const std::vector<Point2> pts = rescaled_splits(records, 5);
  REQUIRE(pts.size() == 200);
  CHECK(pts[0].first == records[0].splits[0].v1 / 2000.0);

  const SurfaceProvider self = [&](const std::vector<Point2>& at) {
    return ecdf_bivariate(pts, at);
  };
  const ValidationReport r = validate_against_limit(records, self, 5);
  CHECK(r.max_abs_error == 0.0);
  CHECK(r.mean_abs_error == 0.0);
  CHECK(r.marginal_l1_v1.size() == kMarginalGridSize);
  CHECK(r.replicate_count == 200);
  CHECK(r.n == 2000);

  const SurfaceProvider limit = [](const std::vector<Point2>& at) {
    return limit_surface(ModelSpec::logistic(0.5), 5, at).values;
  };
  const ValidationReport lr = validate_against_limit(records, limit, 5);
  double largest = 0.0;
  for (const PointError& p : lr.point_errors) {
    CHECK(p.abs_error >= 0.0);
    largest = std::max(largest, p.abs_error);
  }
  CHECK(lr.max_abs_error == largest);
  CHECK(lr.quartiles[0] <= lr.quartiles[1]);
  CHECK(lr.quartiles[1] <= lr.quartiles[2]);
  CHECK(lr.max_abs_error < 0.15);

  std::vector<ReplicateRecord> reversed(records.rbegin(), records.rend());
  CHECK(validate_against_limit(reversed, limit, 5).max_abs_error == lr.max_abs_error);

  CHECK_THROWS_AS(validate_against_limit(records, limit, 6), ValidationError);
  auto mixed = records;
  mixed[1].model = ModelSpec::logistic(0.4);
  CHECK_THROWS_AS(validate_against_limit(mixed, limit, 5), ValidationError);
}
