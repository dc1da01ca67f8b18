// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g4s/decision_tree.hpp"
#include "g4s/features.hpp"

namespace g4s {

inline constexpr std::uint64_t kBenchSizeCap = 512;

// One named matrix population used by the micro-benchmark grid.
struct BenchKindSpec {
  std::string name;       // dense, sparse, symmetric, triangular, banded
  MatrixKind kind = MatrixKind::General;
  double density = 1.0;
};

struct BenchGrid {
  std::vector<OpKind> ops;
  std::vector<std::string> kinds;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> seeds;
  std::uint64_t repetitions = 2;
};

// 4 ops x 5 kinds x 3 sizes, one seed: the 60-row default grid.
BenchGrid default_bench_grid();

const std::vector<BenchKindSpec>& bench_kind_table();
BenchKindSpec bench_kind_by_name(const std::string& name);

// The strategies every grid cell is timed under.
std::vector<ExecutionStrategy> default_candidates();

// Runs the grid: for each cell, every candidate strategy is executed
// `repetitions` times and the median wall time recorded.
std::vector<BenchSample> run_bench(const BenchGrid& grid, int workers = 1);

}  // namespace g4s
