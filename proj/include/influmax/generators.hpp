#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "influmax/graph.hpp"
#include "influmax/rng.hpp"

namespace influmax {

// Uniform random multigraph: `edges` endpoint pairs drawn uniformly with
// replacement (parallel edges kept), self loops resampled so the edge
// budget is hit exactly.
inline Graph random_multigraph(std::size_t n, std::size_t edges, Rng& rng) {
  if (n < 2) throw std::invalid_argument("random_multigraph: need n >= 2");
  std::vector<std::pair<VertexId, VertexId>> es;
  es.reserve(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    auto u = static_cast<VertexId>(rng.below(n));
    VertexId v = u;
    while (v == u) v = static_cast<VertexId>(rng.below(n));
    es.emplace_back(u, v);
  }
  return Graph::from_edges(n, es);
}

// Preferential attachment: a star on the first edges_per_vertex+1 vertices,
// then each new vertex attaches to edges_per_vertex distinct existing
// vertices sampled proportionally to degree. Simple graph by construction.
inline Graph preferential_attachment(std::size_t n, std::size_t edges_per_vertex,
                                     std::uint64_t seed) {
  const std::size_t m0 = edges_per_vertex;
  if (m0 < 1 || n < m0 + 2)
    throw std::invalid_argument("preferential_attachment: need n >= edges_per_vertex + 2");
  Rng rng(derive_seed(seed, 0));
  std::vector<std::pair<VertexId, VertexId>> es;
  std::vector<VertexId> bag;  // one entry per unit of degree
  for (std::size_t i = 1; i <= m0; ++i) {
    es.emplace_back(0, static_cast<VertexId>(i));
    bag.push_back(0);
    bag.push_back(static_cast<VertexId>(i));
  }
  std::vector<VertexId> targets;
  for (std::size_t v = m0 + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < m0) {
      VertexId t = bag[rng.below(bag.size())];
      bool dup = false;
      for (VertexId prev : targets) dup = dup || prev == t;
      if (!dup) targets.push_back(t);
    }
    for (VertexId t : targets) {
      es.emplace_back(static_cast<VertexId>(v), t);
      bag.push_back(static_cast<VertexId>(v));
      bag.push_back(t);
    }
  }
  return Graph::from_edges(n, es);
}

}  // namespace influmax
