// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "g4s/graph.hpp"
#include "g4s/optimizer.hpp"
#include "g4s/program.hpp"
#include "g4s/strategy_types.hpp"
#include "g4s/util.hpp"

namespace g4s {

// Edge-centric execution cuts the edge array into fixed chunks; the chunk
// size is a constant so the reduction shape (and therefore every bit of the
// result) is independent of the worker count.
inline constexpr std::uint64_t kEdgeChunk = 2048;

// A graph with its strategy preprocessing already applied, reusable across
// many passes (matrix-matrix multiplication runs one pass per column).
template <typename T>
struct PreparedGraph {
  Graph<T> graph;
  ExecutionStrategy strategy;
  std::uint64_t original_count = 0;
  std::optional<Reordering> reorder;
  SplitPlan plan;  // empty when no vertex was split
};

namespace detail {

// Gather phase: folds[v] = fold of gather(states[src], w) over v's in-edges
// in canonical order, seeded with the identity.  `states` is indexed by
// source ID and may be shorter than the vertex count when the graph carries
// appended replica vertices (replicas are never sources).
template <typename S, typename T, typename P>
std::vector<typename P::Message> gather_folds(const Graph<T>& g,
                                              const std::vector<S>& states,
                                              const P& prog,
                                              const ExecutionStrategy& strat,
                                              int workers) {
  using M = typename P::Message;
  std::vector<M> folds(g.vertex_count, prog.identity());

  if (strat.model == ExecutionStrategy::Model::EdgeCentric) {
    std::uint64_t edges = g.edge_count();
    std::uint64_t chunk_count = edges == 0 ? 0 : (edges + kEdgeChunk - 1) / kEdgeChunk;
    // Per chunk: partial folds over the contiguous destination span the
    // chunk touches.
    std::vector<std::uint64_t> first_dest(chunk_count);
    std::vector<std::vector<M>> partials(chunk_count);
    parallel_for_chunks(chunk_count, workers, [&](std::uint64_t c) {
      std::uint64_t begin = c * kEdgeChunk;
      std::uint64_t end = std::min(edges, begin + kEdgeChunk);
      // Destination owning the first edge of the chunk.
      std::uint64_t d = static_cast<std::uint64_t>(
          std::upper_bound(g.offsets.begin(), g.offsets.end(), begin) -
          g.offsets.begin() - 1);
      first_dest[c] = d;
      std::vector<M>& local = partials[c];
      M acc = prog.identity();
      for (std::uint64_t e = begin; e < end; ++e) {
        while (e >= g.offsets[d + 1]) {
          local.push_back(acc);
          acc = prog.identity();
          ++d;
        }
        acc = prog.combine(acc, prog.gather(states[g.sources[e]], g.weights[e]));
      }
      local.push_back(acc);
    });
    // Merge chunk partials in ascending chunk order per destination.
    for (std::uint64_t c = 0; c < chunk_count; ++c) {
      std::uint64_t d = first_dest[c];
      for (const M& p : partials[c]) {
        folds[d] = prog.combine(folds[d], p);
        ++d;
      }
    }
    return folds;
  }

  // Vertex-centric: one fold per destination, ascending sources, scheduled
  // in contiguous destination buckets.
  std::uint64_t bucket_size = strat.bucket ? strat.bucket_size : kDefaultBucketSize;
  BucketSchedule sched = bucket_schedule_for(g.vertex_count, bucket_size);
  parallel_for_chunks(sched.ranges.size(), workers, [&](std::uint64_t b) {
    auto [begin, end] = sched.ranges[b];
    for (std::uint64_t v = begin; v < end; ++v) {
      M acc = prog.identity();
      std::uint64_t k = g.offsets[v];
      std::uint64_t stop = g.offsets[v + 1];
      for (; k < stop; ++k) {
        acc = prog.combine(acc, prog.gather(states[g.sources[k]], g.weights[k]));
      }
      folds[v] = acc;
    }
  });
  return folds;
}

// Empty destination spans produced when a chunk begins exactly on a
// destination boundary contribute identity folds, which combine away.

}  // namespace detail

template <typename T>
PreparedGraph<T> prepare_graph(const Graph<T>& g, const ExecutionStrategy& strat) {
  PreparedGraph<T> pg;
  pg.strategy = strat;
  pg.original_count = g.vertex_count;
  const Graph<T>* current = &g;
  if (strat.reorder) {
    auto [reordered, ord] = community_reorder(*current);
    pg.graph = std::move(reordered);
    pg.reorder = std::move(ord);
    current = &pg.graph;
  }
  if (strat.split_hubs) {
    auto [split, plan] = g4s::split_hubs(*current, strat.split_limit);
    pg.plan = std::move(plan);
    pg.graph = std::move(split);
  } else if (!strat.reorder) {
    pg.graph = g;
  }
  if (pg.plan.total_count == 0) {
    pg.plan.original_count = pg.graph.vertex_count;
    pg.plan.total_count = pg.graph.vertex_count;
  }
  return pg;
}

// One Gather/Apply pass over a prepared graph.  States are in original IDs;
// the permutation, replica folding and apply phase happen inside, so the
// caller sees exactly the semantics of an unoptimized pass.
template <typename S, typename T, typename P>
  requires GatherApplyProgramFor<P, S, T>
VertexStateVector<S> run_prepared(const PreparedGraph<T>& pg,
                                  const VertexStateVector<S>& states, const P& prog,
                                  int workers = 0) {
  using M = typename P::Message;
  if (states.size() != pg.original_count) {
    throw_validation("state vector length " + std::to_string(states.size()) +
                     " does not match vertex count " +
                     std::to_string(pg.original_count));
  }

  const std::vector<S>* work = &states;
  std::vector<S> permuted;
  if (pg.reorder) {
    permuted.resize(states.size());
    for (std::uint64_t v = 0; v < states.size(); ++v) {
      permuted[pg.reorder->old_to_new[v]] = states[v];
    }
    work = &permuted;
  }

  std::vector<M> folds = detail::gather_folds(pg.graph, *work, prog, pg.strategy, workers);

  // Replica slots hold raw partial folds; combine them back onto their hubs
  // in ascending replica order before the apply phase.
  for (const auto& hub : pg.plan.hubs) {
    M acc = prog.identity();
    for (std::uint64_t r = 0; r < hub.replica_count; ++r) {
      acc = prog.combine(acc, folds[hub.first_replica + r]);
    }
    folds[hub.hub] = std::move(acc);
  }

  std::uint64_t m = pg.original_count;
  VertexStateVector<S> out(m);
  std::uint64_t bucket_size =
      pg.strategy.bucket ? pg.strategy.bucket_size : kDefaultBucketSize;
  BucketSchedule sched = bucket_schedule_for(m, bucket_size);
  parallel_for_chunks(sched.ranges.size(), workers, [&](std::uint64_t b) {
    auto [begin, end] = sched.ranges[b];
    for (std::uint64_t v = begin; v < end; ++v) {
      out[v] = prog.apply(folds[v], (*work)[v]);
    }
  });

  if (pg.reorder) {
    VertexStateVector<S> unpermuted(m);
    for (std::uint64_t v = 0; v < m; ++v) {
      unpermuted[v] = out[pg.reorder->old_to_new[v]];
    }
    return unpermuted;
  }
  return out;
}

template <typename S, typename T, typename P>
  requires GatherApplyProgramFor<P, S, T>
VertexStateVector<S> run_gather_apply(const Graph<T>& g,
                                      const VertexStateVector<S>& states,
                                      const P& prog,
                                      const ExecutionStrategy& strat = {},
                                      int workers = 0) {
  if (!strat.reorder && !strat.split_hubs) {
    // No graph rewriting requested: gather and apply in place, no copy.
    using M = typename P::Message;
    if (states.size() != g.vertex_count) {
      throw_validation("state vector length " + std::to_string(states.size()) +
                       " does not match vertex count " +
                       std::to_string(g.vertex_count));
    }
    std::vector<M> folds = detail::gather_folds(g, states, prog, strat, workers);
    VertexStateVector<S> out(g.vertex_count);
    std::uint64_t bucket_size = strat.bucket ? strat.bucket_size : kDefaultBucketSize;
    BucketSchedule sched = bucket_schedule_for(g.vertex_count, bucket_size);
    parallel_for_chunks(sched.ranges.size(), workers, [&](std::uint64_t b) {
      auto [begin, end] = sched.ranges[b];
      for (std::uint64_t v = begin; v < end; ++v) {
        out[v] = prog.apply(folds[v], states[v]);
      }
    });
    return out;
  }
  return run_prepared(prepare_graph(g, strat), states, prog, workers);
}

// y = A x through one Gather/Apply pass: gather multiplies the neighbor
// state by the edge weight, combine sums in canonical order, apply writes
// the sum.  The input occupies vertices [0, cols); the result is read from
// vertices [0, rows).
template <typename T>
std::vector<T> graph_mv(const Graph<T>& g, const std::vector<T>& v,
                        const ExecutionStrategy& strat = {}, int workers = 0) {
  if (v.size() != g.origin.cols) {
    throw_validation("vector length " + std::to_string(v.size()) +
                     " does not match matrix columns " +
                     std::to_string(g.origin.cols));
  }
  VertexStateVector<T> states(g.vertex_count, T{});
  std::copy(v.begin(), v.end(), states.begin());
  VertexStateVector<T> out = run_gather_apply(g, states, MvProgram<T>{}, strat, workers);
  return std::vector<T>(out.begin(), out.begin() + g.origin.rows);
}

template <typename T>
std::vector<T> graph_mv_prepared(const PreparedGraph<T>& pg, const std::vector<T>& v,
                                 std::uint64_t rows, std::uint64_t cols,
                                 int workers = 0) {
  if (v.size() != cols) {
    throw_validation("vector length does not match matrix columns");
  }
  VertexStateVector<T> states(pg.original_count, T{});
  std::copy(v.begin(), v.end(), states.begin());
  VertexStateVector<T> out = run_prepared(pg, states, MvProgram<T>{}, workers);
  return std::vector<T>(out.begin(), out.begin() + rows);
}

// Matrix addition as edge-weight merge: union of edge positions, weights
// added where both graphs carry the edge, exact-zero sums dropped.
template <typename T>
Graph<T> graph_add(const Graph<T>& a, const Graph<T>& b) {
  if (a.origin.rows != b.origin.rows || a.origin.cols != b.origin.cols) {
    throw_validation("addition operands must share a shape");
  }
  Graph<T> out;
  out.vertex_count = a.vertex_count;
  out.origin.rows = a.origin.rows;
  out.origin.cols = a.origin.cols;
  out.origin.kind = MatrixKind::General;
  out.origin.scalar = scalar_kind_of<T>();
  out.offsets.assign(a.vertex_count + 1, 0);
  out.sources.reserve(a.edge_count() + b.edge_count());
  out.weights.reserve(a.edge_count() + b.edge_count());

  for (std::uint64_t v = 0; v < a.vertex_count; ++v) {
    auto sa = a.in_sources(v);
    auto wa = a.in_weights(v);
    auto sb = b.in_sources(v);
    auto wb = b.in_weights(v);
    std::size_t i = 0, j = 0;
    while (i < sa.size() || j < sb.size()) {
      std::uint64_t src;
      T w;
      if (j >= sb.size() || (i < sa.size() && sa[i] < sb[j])) {
        src = sa[i];
        w = wa[i];
        ++i;
      } else if (i >= sa.size() || sb[j] < sa[i]) {
        src = sb[j];
        w = wb[j];
        ++j;
      } else {
        src = sa[i];
        w = wa[i] + wb[j];
        ++i;
        ++j;
      }
      if (is_zero(w)) continue;
      out.sources.push_back(src);
      out.weights.push_back(w);
    }
    out.offsets[v + 1] = out.sources.size();
  }
  return out;
}

// B * C with a dense right operand: one MV pass per column of C, sharing
// the prepared graph across all d passes.
template <typename T>
DenseMatrix<T> graph_mm(const Graph<T>& g_b, const DenseMatrix<T>& c,
                        const ExecutionStrategy& strat = {}, int workers = 0) {
  if (g_b.origin.cols != c.rows) {
    throw_validation("product inner dimensions " + std::to_string(g_b.origin.cols) +
                     " and " + std::to_string(c.rows) + " do not match");
  }
  PreparedGraph<T> pg = prepare_graph(g_b, strat);
  DenseMatrix<T> out(g_b.origin.rows, c.cols);
  std::vector<T> column(c.rows);
  for (std::uint64_t k = 0; k < c.cols; ++k) {
    for (std::uint64_t j = 0; j < c.rows; ++j) column[j] = c.at(j, k);
    std::vector<T> y =
        graph_mv_prepared(pg, column, g_b.origin.rows, g_b.origin.cols, workers);
    for (std::uint64_t i = 0; i < out.rows; ++i) out.at(i, k) = y[i];
  }
  return out;
}

// A * B as a graph: every 2-path through a shared middle vertex becomes a
// direct edge, so chained dependencies turn into direct ones.  Accumulation
// runs row by row with a dense scratch over B's columns; middle vertices are
// visited in ascending order, which fixes the summation order.
template <typename T>
Graph<T> compose_graphs(const Graph<T>& g_a, const Graph<T>& g_b, int workers = 0) {
  if (g_a.origin.cols != g_b.origin.rows) {
    throw_validation("composition inner dimensions " +
                     std::to_string(g_a.origin.cols) + " and " +
                     std::to_string(g_b.origin.rows) + " do not match");
  }
  std::uint64_t rows = g_a.origin.rows;
  std::uint64_t cols = g_b.origin.cols;
  std::uint64_t m = std::max(rows, cols);

  std::vector<std::vector<Entry<T>>> row_entries(rows);
  BucketSchedule sched = bucket_schedule_for(rows, kDefaultBucketSize);
  parallel_for_chunks(sched.ranges.size(), workers, [&](std::uint64_t bkt) {
    std::vector<T> scratch(cols, T{});
    std::vector<std::uint64_t> touched;
    auto [begin, end] = sched.ranges[bkt];
    for (std::uint64_t i = begin; i < end; ++i) {
      touched.clear();
      auto mids = g_a.in_sources(i);
      auto aw = g_a.in_weights(i);
      for (std::size_t q = 0; q < mids.size(); ++q) {
        std::uint64_t j = mids[q];
        if (j >= g_b.vertex_count) continue;
        auto ks = g_b.in_sources(j);
        auto bw = g_b.in_weights(j);
        for (std::size_t r = 0; r < ks.size(); ++r) {
          if (is_zero(scratch[ks[r]]) && !is_zero(aw[q] * bw[r])) {
            touched.push_back(ks[r]);
          }
          scratch[ks[r]] += aw[q] * bw[r];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::uint64_t k : touched) {
        if (!is_zero(scratch[k])) row_entries[i].push_back({i, k, scratch[k]});
        scratch[k] = T{};
      }
    }
  });

  std::vector<Entry<T>> triples;
  for (auto& row : row_entries) {
    triples.insert(triples.end(), row.begin(), row.end());
  }
  MatrixDescriptor origin;
  origin.rows = rows;
  origin.cols = cols;
  origin.scalar = scalar_kind_of<T>();
  return graph_from_triples(m, origin, std::move(triples));
}

// The graph of u * transpose(w) (conjugating w in Hermitian mode), checked
// against the order of the matrix it will be merged into.
template <typename T>
Graph<T> outer_product_graph(const Graph<T>& g, const std::vector<T>& u,
                             const std::vector<T>& w, bool conjugate = false) {
  if (g.origin.rows != g.origin.cols) {
    throw_validation("rank-1 update requires a square matrix");
  }
  std::uint64_t n = g.origin.rows;
  if (u.size() != n || w.size() != n) {
    throw_validation("rank-1 update vectors do not match the matrix order");
  }
  std::vector<Entry<T>> triples;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (is_zero(u[i])) continue;
    for (std::uint64_t j = 0; j < n; ++j) {
      T wj = conjugate ? conj_value(w[j]) : w[j];
      T v = u[i] * wj;
      if (!is_zero(v)) triples.push_back({i, j, v});
    }
  }
  MatrixDescriptor origin;
  origin.rows = origin.cols = n;
  origin.scalar = scalar_kind_of<T>();
  return graph_from_triples(n, origin, std::move(triples));
}

// A + u * transpose(w), expressed as an edge-weight merge with the outer
// product's graph.
template <typename T>
Graph<T> graph_rank1_update(const Graph<T>& g, const std::vector<T>& u,
                            const std::vector<T>& w, bool conjugate = false) {
  return graph_add(g, outer_product_graph(g, u, w, conjugate));
}

}  // namespace g4s
