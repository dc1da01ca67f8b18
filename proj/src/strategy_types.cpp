// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/strategy_types.hpp"

#include "g4s/error.hpp"

namespace g4s {

void validate_strategy(const ExecutionStrategy& s) {
  if (s.bucket_size < 1) {
    throw_validation("bucket size must be at least 1");
  }
  if (s.split_limit < 1) {
    throw_validation("split limit must be at least 1");
  }
}

std::string strategy_name(const ExecutionStrategy& s) {
  std::string name =
      s.model == ExecutionStrategy::Model::VertexCentric ? "vertex-centric"
                                                         : "edge-centric";
  if (s.reorder) name += "+reorder";
  if (s.split_hubs) name += "+split(" + std::to_string(s.split_limit) + ")";
  if (s.bucket) name += "+bucket(" + std::to_string(s.bucket_size) + ")";
  if (s.merge) name += "+merge";
  if (s.replicate_hubs) name += "+replicate";
  if (s.delta_encode) name += "+delta";
  return name;
}

}  // namespace g4s
