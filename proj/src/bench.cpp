// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/bench.hpp"

#include <algorithm>
#include <chrono>

#include "g4s/engine.hpp"
#include "g4s/error.hpp"
#include "g4s/synth.hpp"

namespace g4s {

namespace {

constexpr std::uint64_t kMmColumns = 8;

double median_seconds(std::vector<double> times) {
  std::sort(times.begin(), times.end());
  std::size_t n = times.size();
  return n % 2 == 1 ? times[n / 2] : (times[n / 2 - 1] + times[n / 2]) / 2.0;
}

struct BenchCell {
  Graph<double> a;
  Graph<double> b;            // second operand for add / compose
  std::vector<double> x;      // MV input
  DenseMatrix<double> c;      // MM right operand
  FeatureVector features;
};

BenchCell make_cell(OpKind op, const BenchKindSpec& spec, std::uint64_t n,
                    std::uint64_t seed) {
  MatrixDescriptor d;
  d.rows = d.cols = n;
  d.kind = spec.kind;
  if (spec.kind == MatrixKind::Banded) {
    d.band_lower = std::min<std::uint64_t>(2, n - 1);
    d.band_upper = std::min<std::uint64_t>(1, n - 1);
  }
  BenchCell cell;
  auto m = random_matrix<double>(d, spec.density, seed);
  cell.a = matrix_to_graph(m);
  if (op == OpKind::Add || op == OpKind::Compose) {
    cell.b = matrix_to_graph(random_matrix<double>(d, spec.density, seed + 1));
  }
  if (op == OpKind::MV) {
    Rng rng(seed + 2);
    cell.x.resize(n);
    for (auto& v : cell.x) v = rng.next_real(-1.0, 1.0);
  }
  if (op == OpKind::MM) {
    Rng rng(seed + 3);
    cell.c = DenseMatrix<double>(n, std::min(n, kMmColumns));
    for (auto& v : cell.c.values) v = rng.next_real(-1.0, 1.0);
  }
  cell.features = extract_features(op, d, cell.a.edge_count());
  return cell;
}

void run_once(OpKind op, const BenchCell& cell, const ExecutionStrategy& strat,
              int workers) {
  switch (op) {
    case OpKind::MV:
      (void)graph_mv(cell.a, cell.x, strat, workers);
      break;
    case OpKind::Add:
      (void)graph_add(cell.a, cell.b);
      break;
    case OpKind::MM:
      (void)graph_mm(cell.a, cell.c, strat, workers);
      break;
    case OpKind::Compose:
      (void)compose_graphs(cell.a, cell.b, workers);
      break;
    case OpKind::Rank1: {
      std::vector<double> ones(cell.a.origin.rows, 1.0);
      (void)graph_rank1_update(cell.a, ones, ones);
      break;
    }
  }
}

}  // namespace

BenchGrid default_bench_grid() {
  BenchGrid grid;
  grid.ops = {OpKind::MV, OpKind::Add, OpKind::MM, OpKind::Compose};
  grid.kinds = {"dense", "sparse", "symmetric", "triangular", "banded"};
  grid.sizes = {32, 64, 128};
  grid.seeds = {1};
  grid.repetitions = 2;
  return grid;
}

const std::vector<BenchKindSpec>& bench_kind_table() {
  static const std::vector<BenchKindSpec> table = {
      {"dense", MatrixKind::General, 1.0},
      {"sparse", MatrixKind::General, 0.005},
      {"symmetric", MatrixKind::Symmetric, 0.3},
      {"triangular", MatrixKind::TriangularUpper, 0.3},
      {"banded", MatrixKind::Banded, 1.0},
  };
  return table;
}

BenchKindSpec bench_kind_by_name(const std::string& name) {
  for (const auto& spec : bench_kind_table()) {
    if (spec.name == name) return spec;
  }
  throw_validation("unknown benchmark matrix kind '" + name + "'");
}

std::vector<ExecutionStrategy> default_candidates() {
  ExecutionStrategy vc;
  ExecutionStrategy vc_reorder;
  vc_reorder.reorder = true;
  ExecutionStrategy ec;
  ec.model = ExecutionStrategy::Model::EdgeCentric;
  ExecutionStrategy ec_split;
  ec_split.model = ExecutionStrategy::Model::EdgeCentric;
  ec_split.split_hubs = true;
  return {vc, vc_reorder, ec, ec_split};
}

std::vector<BenchSample> run_bench(const BenchGrid& grid, int workers) {
  if (grid.ops.empty() || grid.kinds.empty() || grid.sizes.empty() ||
      grid.seeds.empty()) {
    throw_validation("benchmark grid must list ops, kinds, sizes and seeds");
  }
  if (grid.repetitions < 1) {
    throw_validation("benchmark needs at least 1 repetition");
  }
  for (std::uint64_t n : grid.sizes) {
    if (n < 1 || n > kBenchSizeCap) {
      throw_validation("benchmark size " + std::to_string(n) +
                       " outside [1, " + std::to_string(kBenchSizeCap) + "]");
    }
  }

  std::vector<ExecutionStrategy> candidates = default_candidates();
  std::vector<BenchSample> samples;
  for (OpKind op : grid.ops) {
    for (const std::string& kind_name : grid.kinds) {
      BenchKindSpec spec = bench_kind_by_name(kind_name);
      for (std::uint64_t n : grid.sizes) {
        for (std::uint64_t seed : grid.seeds) {
          BenchCell cell = make_cell(op, spec, n, seed);
          BenchSample sample;
          sample.features = cell.features;
          for (const ExecutionStrategy& strat : candidates) {
            std::vector<double> times;
            for (std::uint64_t rep = 0; rep < grid.repetitions; ++rep) {
              auto t0 = std::chrono::steady_clock::now();
              run_once(op, cell, strat, workers);
              auto t1 = std::chrono::steady_clock::now();
              double seconds = std::chrono::duration<double>(t1 - t0).count();
              // A clock tick of zero would violate the sample invariant.
              times.push_back(std::max(seconds, 1e-9));
            }
            sample.runtimes.emplace_back(strat, median_seconds(std::move(times)));
          }
          samples.push_back(std::move(sample));
        }
      }
    }
  }
  return samples;
}

}  // namespace g4s
