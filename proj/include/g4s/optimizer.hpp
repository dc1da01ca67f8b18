// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "g4s/graph.hpp"
#include "g4s/program.hpp"
#include "g4s/strategy_types.hpp"

namespace g4s {

inline constexpr std::uint64_t kMaxCommunitySize = 1024;

struct Reordering {
  std::vector<std::uint64_t> old_to_new;
  std::vector<std::uint64_t> new_to_old;
};

struct SplitPlan {
  struct Hub {
    std::uint64_t hub = 0;
    std::uint64_t first_replica = 0;
    std::uint64_t replica_count = 0;
  };
  std::uint64_t split_limit = kDefaultSplitLimit;
  std::uint64_t original_count = 0;
  std::uint64_t total_count = 0;
  std::vector<Hub> hubs;

  bool empty() const { return hubs.empty(); }
};

struct BucketSchedule {
  std::uint64_t bucket_size = kDefaultBucketSize;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
};

namespace detail {

// Undirected neighbor lists (in- and out-neighbors merged, deduplicated,
// ascending), used only for community growth.
template <typename T>
std::vector<std::vector<std::uint64_t>> undirected_neighbors(const Graph<T>& g) {
  std::vector<std::vector<std::uint64_t>> nbr(g.vertex_count);
  for (std::uint64_t dst = 0; dst < g.vertex_count; ++dst) {
    for (std::uint64_t src : g.in_sources(dst)) {
      nbr[dst].push_back(src);
      nbr[src].push_back(dst);
    }
  }
  for (auto& list : nbr) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nbr;
}

template <typename T>
Graph<T> relabel_graph(const Graph<T>& g, const std::vector<std::uint64_t>& old_to_new) {
  std::vector<Entry<T>> triples;
  triples.reserve(g.edge_count());
  for (std::uint64_t dst = 0; dst < g.vertex_count; ++dst) {
    auto src = g.in_sources(dst);
    auto w = g.in_weights(dst);
    for (std::size_t k = 0; k < src.size(); ++k) {
      triples.push_back({old_to_new[dst], old_to_new[src[k]], w[k]});
    }
  }
  Graph<T> out = graph_from_triples(g.vertex_count, g.origin, std::move(triples));
  return out;
}

}  // namespace detail

// Deterministic community construction: seeds visited in descending total
// degree (ties by ascending ID), breadth-first growth over unvisited
// neighbors in ascending ID order, each community capped at 1024 vertices.
// New IDs are assigned consecutively in visitation order, so a community
// occupies a contiguous ID range in the relabeled graph.
template <typename T>
std::pair<Graph<T>, Reordering> community_reorder(const Graph<T>& g) {
  std::uint64_t m = g.vertex_count;
  std::vector<std::uint64_t> degree(m, 0);
  for (std::uint64_t dst = 0; dst < m; ++dst) {
    degree[dst] += g.in_degree(dst);
    for (std::uint64_t src : g.in_sources(dst)) degree[src]++;
  }
  std::vector<std::uint64_t> seeds(m);
  std::iota(seeds.begin(), seeds.end(), 0);
  std::sort(seeds.begin(), seeds.end(), [&](std::uint64_t a, std::uint64_t b) {
    return degree[a] != degree[b] ? degree[a] > degree[b] : a < b;
  });

  std::vector<std::vector<std::uint64_t>> nbr = detail::undirected_neighbors(g);
  Reordering ord;
  ord.old_to_new.assign(m, 0);
  ord.new_to_old.assign(m, 0);
  std::vector<bool> visited(m, false);
  std::uint64_t next_id = 0;

  for (std::uint64_t seed : seeds) {
    if (visited[seed]) continue;
    std::vector<std::uint64_t> members{seed};
    visited[seed] = true;
    for (std::size_t q = 0; q < members.size(); ++q) {
      for (std::uint64_t n : nbr[members[q]]) {
        if (visited[n] || members.size() >= kMaxCommunitySize) continue;
        visited[n] = true;
        members.push_back(n);
      }
    }
    for (std::uint64_t v : members) {
      ord.old_to_new[v] = next_id;
      ord.new_to_old[next_id] = v;
      ++next_id;
    }
  }

  return {detail::relabel_graph(g, ord.old_to_new), std::move(ord)};
}

// Splits every vertex whose in-degree strictly exceeds the limit into
// ceil(degree / limit) replicas appended after the original vertices.  Each
// replica takes a contiguous slice of the hub's ascending in-edge list; the
// hub keeps its state and out-edges but loses its in-edges.  Replicas only
// gather; merging their partial folds is the engine's (or the caller's) job.
template <typename T>
std::pair<Graph<T>, SplitPlan> split_hubs(const Graph<T>& g,
                                          std::uint64_t limit = kDefaultSplitLimit) {
  if (limit < 1) throw_validation("split limit must be at least 1");
  SplitPlan plan;
  plan.split_limit = limit;
  plan.original_count = g.vertex_count;

  std::uint64_t next_replica = g.vertex_count;
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    std::uint64_t deg = g.in_degree(v);
    if (deg <= limit) continue;
    std::uint64_t replicas = (deg + limit - 1) / limit;
    plan.hubs.push_back({v, next_replica, replicas});
    next_replica += replicas;
  }
  plan.total_count = next_replica;
  if (plan.empty()) return {g, std::move(plan)};

  Graph<T> out;
  out.vertex_count = plan.total_count;
  out.origin = g.origin;
  out.offsets.assign(plan.total_count + 1, 0);
  out.sources.reserve(g.edge_count());
  out.weights.reserve(g.edge_count());

  // In-edge lists for original vertices (hubs emptied), then replica slices,
  // each list already ascending because slices preserve the hub's order.
  std::vector<std::uint64_t> hub_index(g.vertex_count, 0);
  std::vector<bool> is_hub(g.vertex_count, false);
  for (std::size_t h = 0; h < plan.hubs.size(); ++h) {
    is_hub[plan.hubs[h].hub] = true;
    hub_index[plan.hubs[h].hub] = h;
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> replica_slices;  // edge ranges
  replica_slices.reserve(plan.total_count - g.vertex_count);
  for (const auto& hub : plan.hubs) {
    std::uint64_t begin = g.offsets[hub.hub];
    std::uint64_t end = g.offsets[hub.hub + 1];
    for (std::uint64_t r = 0; r < hub.replica_count; ++r) {
      std::uint64_t slice_begin = begin + r * limit;
      std::uint64_t slice_end = std::min(end, slice_begin + limit);
      replica_slices.emplace_back(slice_begin, slice_end);
    }
  }

  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    out.offsets[v + 1] = out.offsets[v];
    if (is_hub[v]) continue;
    out.offsets[v + 1] += g.in_degree(v);
    auto src = g.in_sources(v);
    auto w = g.in_weights(v);
    out.sources.insert(out.sources.end(), src.begin(), src.end());
    out.weights.insert(out.weights.end(), w.begin(), w.end());
  }
  for (std::uint64_t r = 0; r < replica_slices.size(); ++r) {
    auto [begin, end] = replica_slices[r];
    std::uint64_t v = g.vertex_count + r;
    out.offsets[v + 1] = out.offsets[v] + (end - begin);
    out.sources.insert(out.sources.end(), g.sources.begin() + begin,
                       g.sources.begin() + end);
    out.weights.insert(out.weights.end(), g.weights.begin() + begin,
                       g.weights.begin() + end);
  }

  return {std::move(out), std::move(plan)};
}

// Folds each hub's replica partials (ascending replica order) and applies
// them onto the hub's state.  `states` is the output of running the split
// graph with a scalar program whose apply leaves gathered partials in the
// replica slots (apply = message), which is how the split graph executes.
template <typename T, typename P>
  requires GatherApplyProgramFor<P, T, T>
VertexStateVector<T> merge_replica_results(const VertexStateVector<T>& states,
                                           const SplitPlan& plan, const P& prog) {
  if (states.size() != plan.total_count) {
    throw_validation("state vector length does not match the split plan");
  }
  VertexStateVector<T> out(states.begin(), states.begin() + plan.original_count);
  for (const auto& hub : plan.hubs) {
    typename P::Message acc = prog.identity();
    for (std::uint64_t r = 0; r < hub.replica_count; ++r) {
      acc = prog.combine(acc, states[hub.first_replica + r]);
    }
    out[hub.hub] = prog.apply(acc, states[hub.hub]);
  }
  return out;
}

// Contiguous destination ranges of at most bucket_size vertices.
inline BucketSchedule bucket_schedule_for(std::uint64_t m, std::uint64_t bucket_size) {
  if (bucket_size < 1) throw_validation("bucket size must be at least 1");
  BucketSchedule sched;
  sched.bucket_size = bucket_size;
  for (std::uint64_t start = 0; start < m; start += bucket_size) {
    sched.ranges.emplace_back(start, std::min(m, start + bucket_size));
  }
  return sched;
}

template <typename T>
BucketSchedule bucket_schedule(const Graph<T>& g,
                               std::uint64_t bucket_size = kDefaultBucketSize) {
  return bucket_schedule_for(g.vertex_count, bucket_size);
}

}  // namespace g4s
