#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "srisk/rng.hpp"

namespace srisk {

/// Monte Carlo run configuration. Path i always draws from SeedStream(seed, i),
/// so results depend only on (seed, samples), never on chunking or workers.
struct McOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;
  std::size_t chunk_size = 1u << 16;
  unsigned workers = 1;
};

inline constexpr double kZ99 = 2.576;

/// Binomial proportion with normal-approximation standard error.
struct BinomialEstimate {
  std::size_t hits = 0;
  std::size_t trials = 0;

  double p() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials); }
  double se() const {
    if (trials == 0) return 0.0;
    const double q = p();
    return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
  }
  double ci_low(double z = kZ99) const { return std::max(0.0, p() - z * se()); }
  double ci_high(double z = kZ99) const { return std::min(1.0, p() + z * se()); }
};

/// Runs `body(path_index, stream, acc)` for every path; each chunk has its own
/// accumulator and chunks are merged in index order, so the result is
/// independent of scheduling. Acc needs a default constructor and merge(const Acc&).
template <class Acc, class Body>
Acc run_chunked(const McOptions& options, Body&& body) {
  const std::size_t chunk = std::max<std::size_t>(options.chunk_size, 1);
  const std::size_t n_chunks = (options.samples + chunk - 1) / chunk;
  std::vector<Acc> partial(n_chunks);
  std::atomic<std::size_t> next{0};

  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(options.samples, begin + chunk);
        Acc& acc = partial[c];
        for (std::size_t i = begin; i < end; ++i) {
          SeedStream stream(options.seed, i);
          body(i, stream, acc);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_chunks);
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  Acc total{};
  for (const auto& p : partial) total.merge(p);
  return total;
}

/// Hit counters for a fixed list of thresholds.
struct HitCounts {
  std::vector<std::size_t> hits;
  std::size_t trials = 0;

  void merge(const HitCounts& other) {
    if (hits.size() < other.hits.size()) hits.resize(other.hits.size(), 0);
    for (std::size_t i = 0; i < other.hits.size(); ++i) hits[i] += other.hits[i];
    trials += other.trials;
  }
};

/// options.samples i.i.d. draws, draw i from SeedStream(seed, i), in index order.
template <class Sampler>
std::vector<double> draw_iid(Sampler&& sampler, const McOptions& options) {
  struct Draws {
    std::vector<double> values;
    void merge(const Draws& other) { values.insert(values.end(), other.values.begin(), other.values.end()); }
  };
  auto all = run_chunked<Draws>(options, [&](std::size_t, SeedStream& stream, Draws& acc) {
    acc.values.push_back(sampler(stream));
  });
  return std::move(all.values);
}

}  // namespace srisk
