#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "tailcord/errors.hpp"
#include "tailcord/experiment.hpp"

using namespace tailcord;

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e6) == "1e+06");
  CHECK(format_double(123456.0) == "123456");
  CHECK(format_double(-1.0) == "-1");
  for (double v : {1.0 / 3.0, 4.2801902091322415, 7.6198530164865031e-24, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("config parsing") {
  const auto doc = nlohmann::json::parse(R"({
    "family": "logistic", "gamma": 0.5, "n": 500, "replicates": 3, "k_list": [1, 10],
    "seed": 9, "grid": {"v1_min": 0.5, "v1_max": 5, "v2_min": 0.5, "v2_max": 5, "steps": 5},
    "quad": {"abs_tol": 1e-8, "substitution": "reciprocal"}, "surface": "oracle"
  })");
  const ExperimentConfig c = config_from_json(doc);
  CHECK(c.model == ModelSpec::logistic(0.5));
  CHECK(c.n == 500);
  CHECK(c.k_list == std::vector<std::size_t>{1, 10});
  REQUIRE(c.grid.has_value());
  CHECK(c.grid->steps == 5);
  CHECK(c.quad.abs_tol == 1e-8);
  CHECK(c.quad.substitution == Substitution::ReciprocalU);
  CHECK(c.surface == SurfaceSource::Oracle);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"family": "logistic"})")),
                  InvalidModelError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": "many"})")), ValidationError);
  ExperimentConfig bad = c;
  bad.k_list = {500};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  const auto sample_points = config_from_json(nlohmann::json::parse(R"({"grid": "sample-points"})"));
  CHECK_FALSE(sample_points.grid.has_value());
}

TEST_CASE("writers use the fixed column order") {
  ExperimentConfig c;
  c.n = 100;
  c.replicates = 2;
  c.k_list = {1};
  const auto records = simulate(c);
  std::ostringstream out;
  write_replicates_csv(out, records);
  const std::string text = out.str();
  CHECK(text.rfind("replicate,k,v1,v2\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  std::ostringstream again;
  write_replicates_csv(again, simulate(c));
  CHECK(again.str() == text);

  LimitSurface s;
  s.grid = {{1.0, 2.0}};
  s.values = {0.5};
  s.errors = {-1.0};
  std::ostringstream surface;
  write_surface_csv(surface, s);
  CHECK(surface.str() == "v1,v2,cdf,quad_error\n1,2,0.5,-1\n");

  std::ostringstream norming;
  write_norming_csv(norming, {norming_constants(1e5, 0.5)});
  CHECK(norming.str().rfind("n,rho,a_n,b_n,a_tilde_n,b_tilde_n,a_tilde_nE,b_tilde_nE\n1e+05,0.5,", 0) == 0);

  std::ostringstream sweep;
  write_ksweep_csv(sweep, {{1, 0.5, 0.25, 1.0, 0.01}});
  CHECK(sweep.str() == "k,v1_median,v2_median,v2_q90,max_abs_error\n1,0.5,0.25,1,0.01\n");
}

TEST_CASE("validate and sweep") {
  ExperimentConfig c;
  c.n = 1000;
  c.replicates = 100;
  c.k_list = {1, 20};
  c.surface = SurfaceSource::Self;
  const auto records = simulate(c);
  CHECK(validate_experiment(c, records, 1).max_abs_error == 0.0);

  c.surface = SurfaceSource::Limit;
  const auto rows = ksweep(c, records);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].v2_median <= rows[0].v2_median);
  CHECK(rows[0].max_abs_error == validate_experiment(c, records, 1).max_abs_error);

  const nlohmann::json j = report_to_json(validate_experiment(c, records, 20));
  CHECK(j["k"] == 20);
  CHECK(j["model"]["family"] == "survival-clayton");
  CHECK(j["point_errors"].size() == 100);
}
