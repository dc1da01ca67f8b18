// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>

namespace g4s {

inline constexpr std::uint64_t kDefaultSplitLimit = 10;
inline constexpr std::uint64_t kDefaultBucketSize = 256;

// How an operation is executed: the parallel model, graph-side
// preprocessing, and the communication policy used when sharded.
struct ExecutionStrategy {
  enum class Model : std::uint8_t { VertexCentric, EdgeCentric };

  Model model = Model::VertexCentric;
  // preprocessing
  bool reorder = false;
  bool split_hubs = false;
  bool bucket = false;
  // communication
  bool merge = true;
  bool replicate_hubs = false;
  bool delta_encode = false;

  std::uint64_t bucket_size = kDefaultBucketSize;
  std::uint64_t split_limit = kDefaultSplitLimit;

  bool operator==(const ExecutionStrategy&) const = default;

  int enabled_flags() const {
    return int(reorder) + int(split_hubs) + int(bucket) + int(merge) +
           int(replicate_hubs) + int(delta_encode);
  }

  // Canonical ordering used for deterministic tie-breaking.
  auto rank_tuple() const {
    return std::make_tuple(static_cast<int>(model), reorder, split_hubs, bucket,
                           merge, replicate_hubs, delta_encode, bucket_size,
                           split_limit);
  }
};

void validate_strategy(const ExecutionStrategy& s);
std::string strategy_name(const ExecutionStrategy& s);

}  // namespace g4s
