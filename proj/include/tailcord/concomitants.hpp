#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tailcord/models.hpp"
#include "tailcord/sampler.hpp"

namespace tailcord {

/// (V1, V2) for one k: V1 is the maximum concomitant of the top-k order
/// statistics of X, V2 the maximum over the remaining n - k.
struct ConcomitantSplit {
  std::size_t k = 0;
  double v1 = 0.0;
  double v2 = 0.0;
  std::size_t n = 0;

  bool operator==(const ConcomitantSplit&) const = default;
};

struct ReplicateRecord {
  std::size_t replicate_index = 0;
  std::vector<ConcomitantSplit> splits;  // one per requested k, in request order
  SeedSpec seed;
  ModelSpec model = ModelSpec::gaussian(0.0);
  Scale scale = Scale::UnitFrechet;

  bool operator==(const ReplicateRecord&) const = default;
};

/// (x order statistic, concomitant) pairs, ascending in x. Ties keep input order.
using OrderedPairs = std::vector<std::pair<double, double>>;

OrderedPairs concomitant_order(std::span<const double> xs, std::span<const double> ys);

/// Requires 1 <= k <= n - 1.
ConcomitantSplit split_maxima(const OrderedPairs& ordered, std::size_t k);

/// Splits for every k at once, sharing one pass over the concomitants.
std::vector<ConcomitantSplit> split_maxima_all(const OrderedPairs& ordered,
                                               std::span<const std::size_t> ks);

struct ReplicateOptions {
  std::size_t n = 0;
  std::vector<std::size_t> k_list;
  std::size_t replicate_count = 1;
  std::uint64_t master_seed = 0;
  /// Worker threads; 0 picks hardware concurrency. Never changes results.
  unsigned parallelism_hint = 1;
};

/// Simulates replicate r from stream r, moves families 1-2 to the unit
/// Frechet scale, and splits at every k. Output is ordered by replicate index.
std::vector<ReplicateRecord> run_replicates(const ModelSpec& model, const ReplicateOptions& opts);

/// One replicate of run_replicates, exposed for composition checks.
ReplicateRecord run_replicate(const ModelSpec& model, const ReplicateOptions& opts,
                              std::size_t replicate_index);

/// Applies the working-scale conversion run_replicates uses.
BivariateBatch to_working_scale(BivariateBatch batch);

}  // namespace tailcord
