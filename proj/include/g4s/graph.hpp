// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "g4s/error.hpp"
#include "g4s/matrix.hpp"

namespace g4s {

// A matrix as a weighted directed graph.  Nonzero A[i, j] becomes an edge
// from source j to destination i, so a vertex's in-edges are exactly its
// matrix row.  The graph always carries max(rows, cols) vertices; vertices
// past the shorter dimension simply have no incident edges on that side.
// Edges are stored compressed by destination with sources ascending, which is
// also the canonical fold order for deterministic execution.
template <typename T>
struct Graph {
  std::uint64_t vertex_count = 0;
  MatrixDescriptor origin;                // descriptor of the source matrix
  std::vector<std::uint64_t> offsets;     // vertex_count + 1 entries
  std::vector<std::uint64_t> sources;     // edge sources, grouped by destination
  std::vector<T> weights;                 // parallel to sources

  std::uint64_t edge_count() const { return sources.size(); }

  std::span<const std::uint64_t> in_sources(std::uint64_t v) const {
    return {sources.data() + offsets[v], sources.data() + offsets[v + 1]};
  }
  std::span<const T> in_weights(std::uint64_t v) const {
    return {weights.data() + offsets[v], weights.data() + offsets[v + 1]};
  }
  std::uint64_t in_degree(std::uint64_t v) const {
    return offsets[v + 1] - offsets[v];
  }

  bool operator==(const Graph&) const = default;
};

// Builds a graph from (destination, source, weight) triples that may arrive
// in any order.  Duplicates are an internal error; callers merge first.
template <typename T>
Graph<T> graph_from_triples(std::uint64_t vertex_count, MatrixDescriptor origin,
                            std::vector<Entry<T>> triples) {
  std::sort(triples.begin(), triples.end(), entry_position_less<T>);
  Graph<T> g;
  g.vertex_count = vertex_count;
  g.origin = origin;
  g.offsets.assign(vertex_count + 1, 0);
  for (const Entry<T>& e : triples) {
    if (e.row >= vertex_count || e.col >= vertex_count) {
      throw_internal("edge endpoint outside the vertex range");
    }
    g.offsets[e.row + 1]++;
  }
  for (std::uint64_t v = 0; v < vertex_count; ++v) g.offsets[v + 1] += g.offsets[v];
  g.sources.reserve(triples.size());
  g.weights.reserve(triples.size());
  for (std::size_t k = 0; k < triples.size(); ++k) {
    if (k > 0 && triples[k - 1].row == triples[k].row &&
        triples[k - 1].col == triples[k].col) {
      throw_internal("duplicate edge in graph construction");
    }
    g.sources.push_back(triples[k].col);
    g.weights.push_back(triples[k].value);
  }
  return g;
}

// The matrix to graph transform.  Compact storage expands first, so the
// graph always encodes explicit values.
template <typename T>
Graph<T> matrix_to_graph(const CooMatrix<T>& m) {
  CooMatrix<T> g = expand_storage(m);
  std::uint64_t vertex_count = std::max(g.rows(), g.cols());
  std::vector<Entry<T>> triples = g.entries();
  Graph<T> out = graph_from_triples(vertex_count, m.desc(), std::move(triples));
  return out;
}

// Inverse transform.  The result is General over the requested shape; the
// shape defaults to the origin recorded on the graph.
template <typename T>
CooMatrix<T> graph_to_matrix(const Graph<T>& g, std::uint64_t rows, std::uint64_t cols) {
  if (std::max(rows, cols) != g.vertex_count) {
    throw_validation("requested shape does not match the vertex count");
  }
  std::vector<Entry<T>> entries;
  entries.reserve(g.edge_count());
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    auto src = g.in_sources(v);
    auto w = g.in_weights(v);
    for (std::size_t k = 0; k < src.size(); ++k) {
      entries.push_back({v, src[k], w[k]});
    }
  }
  MatrixDescriptor desc;
  desc.rows = rows;
  desc.cols = cols;
  desc.scalar = scalar_kind_of<T>();
  return CooMatrix<T>(desc, std::move(entries));
}

template <typename T>
CooMatrix<T> graph_to_matrix(const Graph<T>& g) {
  return graph_to_matrix(g, g.origin.rows, g.origin.cols);
}

// Out-edge view, used by push style communication and degree statistics.
template <typename T>
struct OutAdjacency {
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint64_t> targets;
  std::vector<T> weights;

  std::span<const std::uint64_t> out_targets(std::uint64_t v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  std::span<const T> out_weights(std::uint64_t v) const {
    return {weights.data() + offsets[v], weights.data() + offsets[v + 1]};
  }
  std::uint64_t out_degree(std::uint64_t v) const {
    return offsets[v + 1] - offsets[v];
  }
};

template <typename T>
OutAdjacency<T> build_out_adjacency(const Graph<T>& g) {
  OutAdjacency<T> out;
  out.offsets.assign(g.vertex_count + 1, 0);
  for (std::uint64_t s : g.sources) out.offsets[s + 1]++;
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) out.offsets[v + 1] += out.offsets[v];
  out.targets.resize(g.edge_count());
  out.weights.resize(g.edge_count());
  std::vector<std::uint64_t> cursor(out.offsets.begin(), out.offsets.end() - 1);
  // Walking destinations in order makes each source's target list ascending.
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    auto src = g.in_sources(v);
    auto w = g.in_weights(v);
    for (std::size_t k = 0; k < src.size(); ++k) {
      std::uint64_t slot = cursor[src[k]]++;
      out.targets[slot] = v;
      out.weights[slot] = w[k];
    }
  }
  return out;
}

}  // namespace g4s
