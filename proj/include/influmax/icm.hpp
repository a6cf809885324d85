#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "influmax/graph.hpp"
#include "influmax/rng.hpp"

namespace influmax {

struct SimConfig {
  double p = 0.01;                      // activation probability per edge attempt
  std::uint64_t replications = 10'000;  // Monte-Carlo sample count
  std::uint64_t seed = 0;               // master seed; replication i derives stream i
  unsigned workers = 1;                 // threads for estimate_spread
};

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t replications = 0;
  friend bool operator==(const SpreadEstimate&, const SpreadEstimate&) = default;
};

namespace detail {

inline void validate_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("activation probability must be in [0, 1]");
}

inline void validate_seed_set(const Graph& g, std::span<const VertexId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set is empty");
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  for (VertexId s : seeds) {
    g.check_vertex(s);
    if (seen[s]) throw std::invalid_argument("duplicate seed: " + std::to_string(s));
    seen[s] = 1;
  }
}

struct CascadeScratch {
  std::vector<std::uint8_t> active;
  std::vector<VertexId> frontier;
  std::vector<VertexId> next;
};

// One timestamped cascade. Every newly activated vertex gets one chance
// per incident parallel edge to activate each still-inactive neighbor;
// attempts never repeat. Frontier is processed in ascending id order so
// a single rng stream replays identically.
inline std::uint64_t run_cascade(const Graph& g, std::span<const VertexId> seeds,
                                 double p, Rng& rng, CascadeScratch& s) {
  s.active.assign(g.num_vertices(), 0);
  s.frontier.assign(seeds.begin(), seeds.end());
  std::sort(s.frontier.begin(), s.frontier.end());
  for (VertexId u : s.frontier) s.active[u] = 1;
  std::uint64_t count = seeds.size();

  while (!s.frontier.empty()) {
    s.next.clear();
    for (VertexId u : s.frontier) {
      for (const Neighbor& nb : g.neighbors(u)) {
        if (s.active[nb.id]) continue;
        for (std::uint32_t t = 0; t < nb.multiplicity; ++t) {
          if (rng.uniform01() < p) {
            s.active[nb.id] = 1;
            s.next.push_back(nb.id);
            ++count;
            break;
          }
        }
      }
    }
    std::sort(s.next.begin(), s.next.end());
    s.frontier.swap(s.next);
  }
  return count;
}

}  // namespace detail

// Runs a single cascade from `seeds`, returns the number of activated
// vertices (>= |seeds|).
inline std::uint64_t simulate_once(const Graph& g, const SeedSet& seeds, double p,
                                   Rng& rng) {
  detail::validate_probability(p);
  detail::validate_seed_set(g, seeds);
  detail::CascadeScratch scratch;
  return detail::run_cascade(g, seeds, p, rng, scratch);
}

// Mean and standard error of the spread over cfg.replications independent
// cascades. Replication i always uses stream (cfg.seed, i) and the totals
// are integer sums, so the result is bit-identical for any worker count.
inline SpreadEstimate estimate_spread(const Graph& g, const SeedSet& seeds,
                                      const SimConfig& cfg) {
  detail::validate_probability(cfg.p);
  if (cfg.replications < 1)
    throw std::invalid_argument("replication count must be >= 1");
  detail::validate_seed_set(g, seeds);

  const std::uint64_t reps = cfg.replications;
  unsigned workers = std::max(1u, cfg.workers);
  if (workers > reps) workers = static_cast<unsigned>(reps);

  struct Totals {
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
  };
  std::vector<Totals> partial(workers);

  auto run_block = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    detail::CascadeScratch scratch;
    Totals t;
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng = make_stream(cfg.seed, i);
      std::uint64_t activated = detail::run_cascade(g, seeds, cfg.p, rng, scratch);
      t.sum += activated;
      t.sum_sq += activated * activated;
    }
    partial[w] = t;
  };

  if (workers == 1) {
    run_block(0, 0, reps);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t begin = reps * w / workers;
      std::uint64_t end = reps * (w + 1) / workers;
      threads.emplace_back(run_block, w, begin, end);
    }
    for (auto& th : threads) th.join();
  }

  std::uint64_t sum = 0, sum_sq = 0;
  for (const Totals& t : partial) {
    sum += t.sum;
    sum_sq += t.sum_sq;
  }

  SpreadEstimate est;
  est.replications = reps;
  est.mean = static_cast<double>(sum) / static_cast<double>(reps);
  if (reps > 1) {
    // Exact integer numerator: reps*sum_sq - sum^2 fits __int128 comfortably.
    unsigned __int128 num = static_cast<unsigned __int128>(reps) * sum_sq;
    unsigned __int128 sq = static_cast<unsigned __int128>(sum) * sum;
    double variance = static_cast<double>(num - sq) /
                      (static_cast<double>(reps) * static_cast<double>(reps - 1));
    est.std_error = std::sqrt(variance / static_cast<double>(reps));
  }
  return est;
}

// Enumeration bound for the exact oracle: 2^25 live-edge subgraphs.
inline constexpr std::uint64_t kMaxExactEdges = 25;

// Exact expected spread by live-edge enumeration: every parallel edge is
// independently live with probability p; the spread equals the expected
// number of vertices reachable from the seed set in the live subgraph.
// Union-find with rollback walks all 2^E outcomes.
inline double exact_spread(const Graph& g, const SeedSet& seeds, double p) {
  detail::validate_probability(p);
  detail::validate_seed_set(g, seeds);
  if (g.num_edges() > kMaxExactEdges)
    throw std::invalid_argument("exact_spread: " + std::to_string(g.num_edges()) +
                                " edges exceeds enumeration bound of " +
                                std::to_string(kMaxExactEdges));

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.num_edges());
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (const Neighbor& nb : g.neighbors(u)) {
      if (nb.id < u) continue;
      for (std::uint32_t t = 0; t < nb.multiplicity; ++t) edges.emplace_back(u, nb.id);
    }
  }

  const std::size_t n = g.num_vertices();
  std::vector<VertexId> parent(n);
  std::vector<std::uint32_t> size(n, 1);
  std::vector<std::uint8_t> reaches_seed(n, 0);
  for (VertexId v = 0; v < n; ++v) parent[v] = v;
  for (VertexId s : seeds) reaches_seed[s] = 1;
  std::uint64_t active = seeds.size();

  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };

  struct Undo {
    VertexId child;
    VertexId root;
    std::uint8_t root_mark;
  };
  std::vector<Undo> trail;

  auto unite = [&](VertexId a, VertexId b) {
    VertexId ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (size[ra] < size[rb]) std::swap(ra, rb);
    trail.push_back({rb, ra, reaches_seed[ra]});
    if (reaches_seed[ra] != reaches_seed[rb])
      active += reaches_seed[ra] ? size[rb] : size[ra];
    parent[rb] = ra;
    size[ra] += size[rb];
    reaches_seed[ra] = reaches_seed[ra] | reaches_seed[rb];
  };

  auto rollback = [&](std::size_t mark) {
    while (trail.size() > mark) {
      const Undo& u = trail.back();
      parent[u.child] = u.child;
      size[u.root] -= size[u.child];
      reaches_seed[u.root] = u.root_mark;
      trail.pop_back();
    }
  };

  double total = 0.0;
  auto rec = [&](auto&& self, std::size_t e, double weight) -> void {
    if (weight == 0.0) return;
    if (e == edges.size()) {
      total += weight * static_cast<double>(active);
      return;
    }
    self(self, e + 1, weight * (1.0 - p));
    std::size_t mark = trail.size();
    std::uint64_t saved_active = active;
    unite(edges[e].first, edges[e].second);
    self(self, e + 1, weight * p);
    rollback(mark);
    active = saved_active;
  };
  rec(rec, 0, 1.0);
  return total;
}

}  // namespace influmax
