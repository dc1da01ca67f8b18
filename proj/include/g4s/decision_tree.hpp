// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "g4s/features.hpp"
#include "g4s/strategy_types.hpp"

namespace g4s {

// One benchmark measurement: the featurized operation plus the wall time of
// every candidate strategy.  The training label is the fastest candidate.
struct BenchSample {
  FeatureVector features;
  std::vector<std::pair<ExecutionStrategy, double>> runtimes;

  ExecutionStrategy label() const;
  bool operator==(const BenchSample&) const = default;
};

void validate_sample(const BenchSample& s);

// Deterministic preference order used wherever strategy ties must break:
// vertex-centric first, then fewer enabled flags, then the canonical rank.
bool strategy_preference_less(const ExecutionStrategy& a, const ExecutionStrategy& b);

struct TrainParams {
  std::uint64_t max_depth = 6;
  std::uint64_t min_leaf = 3;

  bool operator==(const TrainParams&) const = default;
};

struct TreeNode {
  int feature = -1;  // negative marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  ExecutionStrategy leaf;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // node 0 is the root
  TrainParams params;

  const ExecutionStrategy& select(const FeatureVector& f) const;
  std::uint64_t depth() const;
  bool operator==(const DecisionTree&) const = default;
};

// Greedy top-down training minimizing Gini impurity of the strategy labels.
// Split-quality ties break toward the lowest feature index, then the lowest
// threshold; sample order does not affect the result.
DecisionTree train_tree(std::vector<BenchSample> samples, TrainParams params = {});

ExecutionStrategy select_strategy(const DecisionTree& tree, const FeatureVector& f);

// Rule table used when no trained tree is available.
ExecutionStrategy static_fallback(const FeatureVector& f);

std::string tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const std::string& text);

std::string samples_to_json(const std::vector<BenchSample>& samples);
std::vector<BenchSample> samples_from_json(const std::string& text);

}  // namespace g4s
