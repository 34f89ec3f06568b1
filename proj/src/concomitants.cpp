#include "tailcord/concomitants.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <mutex>
#include <new>
#include <numeric>
#include <string>
#include <thread>

#include "tailcord/errors.hpp"

namespace tailcord {

OrderedPairs concomitant_order(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DimensionError("concomitant_order: xs and ys differ in length");
  if (xs.empty()) throw DimensionError("concomitant_order: empty sample");
  std::vector<std::size_t> index(xs.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::stable_sort(index.begin(), index.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  OrderedPairs out;
  out.reserve(xs.size());
  for (std::size_t i : index) out.emplace_back(xs[i], ys[i]);
  return out;
}

ConcomitantSplit split_maxima(const OrderedPairs& ordered, std::size_t k) {
  const std::size_t n = ordered.size();
  if (k < 1 || k + 1 > n) {
    throw DomainError("split_maxima: k=" + std::to_string(k) + " outside [1, n-1] for n=" +
                      std::to_string(n));
  }
  constexpr double lowest = -std::numeric_limits<double>::infinity();
  double v1 = lowest;
  double v2 = lowest;
  for (std::size_t i = 0; i < n - k; ++i) v2 = std::max(v2, ordered[i].second);
  for (std::size_t i = n - k; i < n; ++i) v1 = std::max(v1, ordered[i].second);
  return {k, v1, v2, n};
}

std::vector<ConcomitantSplit> split_maxima_all(const OrderedPairs& ordered,
                                               std::span<const std::size_t> ks) {
  const std::size_t n = ordered.size();
  for (std::size_t k : ks) {
    if (k < 1 || k + 1 > n) {
      throw DomainError("split_maxima: k=" + std::to_string(k) + " outside [1, n-1] for n=" +
                        std::to_string(n));
    }
  }
  // prefix[i] = max of concomitants [0, i); suffix[i] = max of [i, n).
  constexpr double lowest = -std::numeric_limits<double>::infinity();
  std::vector<double> prefix(n + 1, lowest);
  std::vector<double> suffix(n + 1, lowest);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = std::max(prefix[i], ordered[i].second);
  for (std::size_t i = n; i-- > 0;) suffix[i] = std::max(suffix[i + 1], ordered[i].second);

  std::vector<ConcomitantSplit> out;
  out.reserve(ks.size());
  for (std::size_t k : ks) out.push_back({k, suffix[n - k], prefix[n - k], n});
  return out;
}

BivariateBatch to_working_scale(BivariateBatch batch) {
  const Scale target = batch.model.working_scale();
  if (batch.scale == target) return batch;
  for (auto* v : {&batch.xs, &batch.ys}) {
    for (double& value : *v) value = marginal_transform(batch.model, value, batch.scale, target);
  }
  batch.scale = target;
  return batch;
}

ReplicateRecord run_replicate(const ModelSpec& model, const ReplicateOptions& opts,
                              std::size_t replicate_index) {
  const SeedSpec seed{opts.master_seed, replicate_index};
  BivariateBatch batch = to_working_scale(sample_model(model, opts.n, seed));
  const OrderedPairs ordered = concomitant_order(batch.xs, batch.ys);
  return {replicate_index, split_maxima_all(ordered, opts.k_list), seed, model, batch.scale};
}

std::vector<ReplicateRecord> run_replicates(const ModelSpec& model, const ReplicateOptions& opts) {
  if (opts.replicate_count < 1) throw DomainError("run_replicates: replicate_count must be >= 1");
  if (opts.k_list.empty()) throw DomainError("run_replicates: k_list is empty");
  for (std::size_t k : opts.k_list) {
    if (k < 1 || k + 1 > opts.n) {
      throw DomainError("run_replicates: k=" + std::to_string(k) + " invalid for n=" +
                        std::to_string(opts.n));
    }
  }

  std::vector<ReplicateRecord> records;
  try {
    records.resize(opts.replicate_count);
  } catch (const std::bad_alloc&) {
    throw Error("run_replicates: cannot allocate replicate records");
  }

  unsigned workers = opts.parallelism_hint;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, opts.replicate_count));

  // Static interleaved partition: record r is written only by worker r % workers.
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned worker) {
    try {
      for (std::size_t r = worker; r < opts.replicate_count; r += workers) {
        records[r] = run_replicate(model, opts, r);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  if (failure) {
    records.clear();
    try {
      std::rethrow_exception(failure);
    } catch (const std::bad_alloc&) {
      throw Error("run_replicates: out of memory; partial results discarded");
    }
  }
  return records;
}

}  // namespace tailcord
