#pragma once

// Verification sweeps: kernel = ideal, surjectivity by evaluation rank,
// relation soundness at random points, embedded stability, and the
// reconstruction round trip.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kq/exact_linalg.hpp"
#include "kq/moduli.hpp"
#include "kq/partitions.hpp"
#include "kq/schur_fiber.hpp"
#include "kq/tilting_quiver.hpp"

namespace kq {

/// Runs task(i) for i in [0, count) on `threads` workers. Each worker gets
/// its own index via `worker`, so per-worker caches need no locking.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t task, unsigned worker)>& task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          task(i, w);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Vertex pairs lambda < mu with min_degree <= |mu| - |lambda| <= max_degree,
/// in (lambda, mu) vertex order.
inline std::vector<std::pair<Partition, Partition>> vertex_pairs(const TiltingQuiver& q, int min_degree,
                                                                 int max_degree) {
  std::vector<std::pair<Partition, Partition>> out;
  for (const auto& l : q.vertices)
    for (const auto& m : q.vertices) {
      int d = degree(m) - degree(l);
      if (contains(l, m) && d >= min_degree && d <= max_degree) out.emplace_back(l, m);
    }
  return out;
}

struct KernelCheck {
  Partition lambda, mu;
  std::uint64_t paths = 0;
  std::size_t ideal_dim = 0, quotient_dim = 0;
  std::uint64_t hom_dim = 0;
  bool ok = false;
};

inline std::vector<KernelCheck> verify_kernel(const TiltingQuiver& q,
                                              const std::vector<std::pair<Partition, Partition>>& pairs,
                                              unsigned threads = 1) {
  std::vector<KernelCheck> out(pairs.size());
  std::vector<std::unique_ptr<detail::IdealBuilder>> builders(std::max(1u, threads));
  parallel_for(pairs.size(), threads, [&](std::size_t i, unsigned w) {
    if (!builders[w]) builders[w] = std::make_unique<detail::IdealBuilder>(q);
    const auto& [l, m] = pairs[i];
    KernelCheck c{l, m, path_count(q, l, m), 0, 0, hom_dim(l, m, q.n), false};
    if (degree(m) - degree(l) >= 2) c.ideal_dim = builders[w]->piece(l, m).size();
    c.quotient_dim = static_cast<std::size_t>(c.paths) - c.ideal_dim;
    c.ok = c.quotient_dim == c.hom_dim;
    out[i] = std::move(c);
  });
  return out;
}

struct SurjectivityCheck {
  Partition lambda, mu;
  std::size_t words = 0, samples = 0, rank = 0;
  std::uint64_t hom_dim = 0;
  bool ok = false;
};

/// Rank of word -> (theta_compose(word, y_s))_s over `samples` random points
/// y_s; the sample seeds are seed, seed + 1, ...
inline SurjectivityCheck theta_rank(int n, const Partition& lambda, const Partition& mu, std::size_t samples,
                                    std::uint64_t seed) {
  const int d = degree(mu) - degree(lambda);
  if (d < 0 || !contains(lambda, mu)) throw Error(Errc::NotContained, "lambda not contained in mu");
  std::vector<std::vector<int>> words{{}};
  for (int k = 0; k < d; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      for (int rho = 1; rho <= n; ++rho) {
        next.push_back(w);
        next.back().push_back(rho);
      }
    words = std::move(next);
  }
  SurjectivityCheck c{lambda, mu, words.size(), samples, 0, hom_dim(lambda, mu, n), false};
  RowSpace span(words.size());
  const auto rows = static_cast<std::size_t>(fiber_dim(mu)), cols = static_cast<std::size_t>(fiber_dim(lambda));
  for (std::size_t s = 0; s < samples && !span.full(); ++s) {
    GrPoint y = random_point(n, seed + s);
    std::vector<RatMatrix> images;
    images.reserve(words.size());
    for (const auto& w : words) images.push_back(theta_compose(lambda, mu, w, y));
    std::vector<Rational> v(words.size());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t w = 0; w < words.size(); ++w) v[w] = images[w](i, j);
        span.insert(v);
      }
  }
  c.rank = span.dim();
  c.ok = c.rank == c.hom_dim;
  return c;
}

inline std::vector<SurjectivityCheck> verify_surjectivity(int n,
                                                          const std::vector<std::pair<Partition, Partition>>& pairs,
                                                          std::size_t samples, std::uint64_t seed,
                                                          unsigned threads = 1) {
  std::vector<SurjectivityCheck> out(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i, unsigned) {
    out[i] = theta_rank(n, pairs[i].first, pairs[i].second, samples, seed);
  });
  return out;
}

/// Per-trial seeds drawn from one master generator.
inline std::vector<std::uint64_t> trial_seeds(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out(count);
  for (auto& s : out) s = rng();
  return out;
}

struct SoundnessCheck {
  int n = 0;
  std::size_t points = 0, relations = 0, failures = 0;
  bool ok = false;
};

/// Every relation evaluates to zero on embed(y) for random points y.
inline SoundnessCheck verify_relations(int n, std::size_t points, std::uint64_t seed, unsigned threads = 1) {
  const auto seeds = trial_seeds(seed, points);
  std::vector<std::size_t> failures(points);
  parallel_for(points, threads,
               [&](std::size_t t, unsigned) { failures[t] = check_relations(embed(random_point(n, seeds[t]))).size(); });
  SoundnessCheck c{n, points, relation_sets(n).size(), 0, false};
  for (auto f : failures) c.failures += f;
  c.ok = c.failures == 0;
  return c;
}

struct TrialFailure {
  std::size_t trial = 0;
  std::uint64_t point_seed = 0, gauge_seed = 0;
  std::string reason;
};

struct RoundTripCheck {
  int n = 0;
  std::size_t trials = 0, passed = 0;
  std::vector<TrialFailure> failures;
  bool ok = false;
};

/// reconstruct(scramble(embed(y), g)) must return y and g / g_(0,0).
inline RoundTripCheck roundtrip(int n, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  const auto seeds = trial_seeds(seed, 2 * trials);
  std::vector<std::string> reasons(trials);
  parallel_for(trials, threads, [&](std::size_t t, unsigned) {
    const GrPoint y = random_point(n, seeds[2 * t]);
    const GaugeElement g = random_gauge(n, seeds[2 * t + 1]);
    try {
      Reconstruction r = reconstruct(scramble(embed(y), g));
      const Rational c = g.blocks[0](0, 0);
      GaugeElement expected = g;
      for (auto& b : expected.blocks) b = (1 / c) * b;
      if (!(r.point == y)) reasons[t] = "recovered point differs";
      else if (!(r.gauge == expected)) reasons[t] = "recovered gauge differs";
    } catch (const Error& e) {
      reasons[t] = e.what();
    }
  });
  RoundTripCheck c{n, trials, 0, {}, false};
  for (std::size_t t = 0; t < trials; ++t) {
    if (reasons[t].empty()) ++c.passed;
    else c.failures.push_back({t, seeds[2 * t], seeds[2 * t + 1], reasons[t]});
  }
  c.ok = c.passed == trials;
  return c;
}

}  // namespace kq
