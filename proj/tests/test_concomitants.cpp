#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "tailcord/concomitants.hpp"
#include "tailcord/errors.hpp"

using namespace tailcord;

TEST_CASE("concomitant ordering") {
  const std::vector<double> xs{1, 3, 2};
  const std::vector<double> ys{10, 30, 20};
  CHECK(concomitant_order(xs, ys) == OrderedPairs{{1, 10}, {2, 20}, {3, 30}});
  const std::vector<double> sorted{1, 2, 3};
  CHECK(concomitant_order(sorted, ys) == OrderedPairs{{1, 10}, {2, 30}, {3, 20}});
  const std::vector<double> tied{5, 5};
  const std::vector<double> tied_y{1, 2};
  CHECK(concomitant_order(tied, tied_y) == OrderedPairs{{5, 1}, {5, 2}});
  const std::vector<double> short_y{1};
  CHECK_THROWS_AS(concomitant_order(tied, short_y), DimensionError);
}

TEST_CASE("split maxima") {
  const OrderedPairs p{{1, 10}, {2, 20}, {3, 30}};
  CHECK(split_maxima(p, 1) == ConcomitantSplit{1, 30, 20, 3});
  CHECK(split_maxima(p, 2) == ConcomitantSplit{2, 30, 10, 3});
  CHECK_THROWS_AS(split_maxima(p, 0), DomainError);
  CHECK_THROWS_AS(split_maxima(p, 3), DomainError);
  const std::vector<std::size_t> ks{2, 1};
  const auto all = split_maxima_all(p, ks);
  CHECK(all[0] == split_maxima(p, 2));
  CHECK(all[1] == split_maxima(p, 1));
}

TEST_CASE("comonotone data and permutation invariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(200);
  for (double& x : xs) x = u(rng);
  const auto ordered = concomitant_order(xs, xs);
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k : {1u, 7u, 199u}) {
    const ConcomitantSplit s = split_maxima(ordered, k);
    CHECK(s.v1 == sorted.back());
    CHECK(s.v2 == sorted[199 - k]);
  }

  std::vector<double> ys(200);
  for (double& y : ys) y = u(rng);
  std::vector<std::size_t> perm(200);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> px, py;
  for (std::size_t i : perm) {
    px.push_back(xs[i]);
    py.push_back(ys[i]);
  }
  for (std::size_t k : {1u, 10u, 150u}) {
    CHECK(split_maxima(concomitant_order(xs, ys), k) ==
          split_maxima(concomitant_order(px, py), k));
  }
}

TEST_CASE("replicate harness") {
  const ModelSpec m = ModelSpec::survival_clayton(2.0);
  ReplicateOptions opts;
  opts.n = 500;
  opts.k_list = {1, 10, 100};
  opts.replicate_count = 40;
  opts.master_seed = 99;
  opts.parallelism_hint = 1;
  const auto serial = run_replicates(m, opts);
  opts.parallelism_hint = 4;
  const auto parallel = run_replicates(m, opts);
  CHECK(serial == parallel);

  for (const ReplicateRecord& r : serial) {
    CHECK(r.scale == Scale::UnitFrechet);
    const BivariateBatch batch = to_working_scale(sample_model(m, opts.n, r.seed));
    const double top = *std::max_element(batch.ys.begin(), batch.ys.end());
    for (std::size_t i = 0; i < r.splits.size(); ++i) {
      CHECK(std::max(r.splits[i].v1, r.splits[i].v2) == top);
      if (i > 0) {
        CHECK(r.splits[i].v1 >= r.splits[i - 1].v1);
        CHECK(r.splits[i].v2 <= r.splits[i - 1].v2);
      }
    }
  }

  // A single replicate is the plain composition of the pieces.
  const BivariateBatch batch = to_working_scale(sample_model(m, opts.n, {99, 3}));
  const auto ordered = concomitant_order(batch.xs, batch.ys);
  CHECK(serial[3].splits[1] == split_maxima(ordered, 10));
  CHECK(run_replicate(m, opts, 3) == serial[3]);

  opts.k_list = {500};
  CHECK_THROWS_AS(run_replicates(m, opts), DomainError);
}

TEST_CASE("strong dependence puts the top concomitant in the top set") {
  ReplicateOptions opts;
  opts.n = 10000;
  opts.k_list = {10};
  opts.replicate_count = 1000;
  opts.master_seed = 2024;
  opts.parallelism_hint = 0;
  const auto records = run_replicates(ModelSpec::survival_clayton(2.0), opts);
  std::size_t wins = 0;
  for (const auto& r : records) wins += r.splits[0].v1 > r.splits[0].v2 ? 1 : 0;
  CHECK(static_cast<double>(wins) / 1000.0 > 0.9);
}
