// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "g4s/distsim.hpp"
#include "g4s/error.hpp"
#include "g4s/strategy_json.hpp"

namespace g4s {

inline constexpr int kReportSchemaVersion = 1;

inline void to_json(nlohmann::json& j, const MigrationEvent& e) {
  j = {{"superstep", e.superstep},
       {"from", e.from},
       {"to", e.to},
       {"vertices", e.vertices},
       {"bytes", e.bytes},
       {"predicted_seconds_saved", e.predicted_seconds_saved}};
}

inline void to_json(nlohmann::json& j, const SuperstepMetrics& s) {
  j = {{"pre_merge", s.pre_merge},
       {"post_merge", s.post_merge},
       {"batches", s.batches},
       {"raw_bytes", s.raw_bytes},
       {"encoded_bytes", s.encoded_bytes},
       {"shard_loads", s.shard_loads},
       {"migrations", s.migrations}};
}

inline void to_json(nlohmann::json& j, const CommMetrics& m) {
  j = {{"supersteps", m.supersteps}};
}

// One run's machine-readable record.  Everything except the wall time is a
// pure function of the inputs and the seed.
struct ReportDocument {
  std::string op;
  nlohmann::json shapes;  // operand name -> [rows, cols] or [length]
  ExecutionStrategy strategy_used;
  std::string strategy_source;  // "flags", "tree" or "static"
  std::uint64_t shards = 0;     // 0 = in-process engine
  std::string result_path;      // empty when the result is inline
  nlohmann::json inline_result;
  std::optional<double> max_rel_error_vs_oracle;
  std::optional<bool> verify_passed;
  std::optional<CommMetrics> comm_metrics;
  double wall_time_seconds = 0.0;
  std::uint64_t seed = 0;
};

inline void to_json(nlohmann::json& j, const ReportDocument& r) {
  if (!std::isfinite(r.wall_time_seconds)) {
    throw_internal("report wall time is not finite");
  }
  if (r.max_rel_error_vs_oracle && !std::isfinite(*r.max_rel_error_vs_oracle)) {
    throw_internal("report oracle error is not finite");
  }
  j = {{"schema_version", kReportSchemaVersion},
       {"op", r.op},
       {"shapes", r.shapes},
       {"strategy_used", r.strategy_used},
       {"strategy_source", r.strategy_source},
       {"shards", r.shards},
       {"wall_time_seconds", r.wall_time_seconds},
       {"seed", r.seed}};
  if (!r.result_path.empty()) {
    j["result_path"] = r.result_path;
  } else {
    j["result"] = r.inline_result;
  }
  if (r.max_rel_error_vs_oracle) {
    j["max_rel_error_vs_oracle"] = *r.max_rel_error_vs_oracle;
  }
  if (r.verify_passed) j["verify_passed"] = *r.verify_passed;
  if (r.comm_metrics) j["comm_metrics"] = *r.comm_metrics;
}

}  // namespace g4s
