// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "g4s/error.hpp"
#include "g4s/features.hpp"
#include "g4s/strategy_types.hpp"

namespace g4s {

inline void to_json(nlohmann::json& j, const ExecutionStrategy& s) {
  j = nlohmann::json{
      {"model", s.model == ExecutionStrategy::Model::VertexCentric ? "vertex-centric"
                                                                   : "edge-centric"},
      {"reorder", s.reorder},
      {"split_hubs", s.split_hubs},
      {"bucket", s.bucket},
      {"merge", s.merge},
      {"replicate_hubs", s.replicate_hubs},
      {"delta_encode", s.delta_encode},
      {"bucket_size", s.bucket_size},
      {"split_limit", s.split_limit},
  };
}

inline void from_json(const nlohmann::json& j, ExecutionStrategy& s) {
  std::string model = j.at("model").get<std::string>();
  if (model == "vertex-centric") {
    s.model = ExecutionStrategy::Model::VertexCentric;
  } else if (model == "edge-centric") {
    s.model = ExecutionStrategy::Model::EdgeCentric;
  } else {
    throw_parse("unknown execution model '" + model + "'");
  }
  s.reorder = j.value("reorder", false);
  s.split_hubs = j.value("split_hubs", false);
  s.bucket = j.value("bucket", false);
  s.merge = j.value("merge", true);
  s.replicate_hubs = j.value("replicate_hubs", false);
  s.delta_encode = j.value("delta_encode", false);
  s.bucket_size = j.value("bucket_size", kDefaultBucketSize);
  s.split_limit = j.value("split_limit", kDefaultSplitLimit);
  validate_strategy(s);
}

inline void to_json(nlohmann::json& j, const FeatureVector& f) {
  j = nlohmann::json{
      {"op", op_kind_name(f.op)},
      {"density", f.density},
      {"symmetric", f.symmetric},
      {"triangular", f.triangular},
      {"banded", f.banded},
      {"packed", f.packed},
      {"hermitian", f.hermitian},
      {"size_log2", f.size_log2},
      {"platform", f.platform},
  };
}

inline void from_json(const nlohmann::json& j, FeatureVector& f) {
  f.op = op_kind_from_name(j.at("op").get<std::string>());
  f.density = j.at("density").get<double>();
  f.symmetric = j.value("symmetric", false);
  f.triangular = j.value("triangular", false);
  f.banded = j.value("banded", false);
  f.packed = j.value("packed", false);
  f.hermitian = j.value("hermitian", false);
  f.size_log2 = j.at("size_log2").get<std::uint64_t>();
  f.platform = j.value("platform", "cpu");
  if (f.density < 0.0 || f.density > 1.0) {
    throw_parse("feature density must lie in [0, 1]");
  }
}

}  // namespace g4s
