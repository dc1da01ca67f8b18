// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
//
// The command driver behind the CLI: loads operands, picks a strategy,
// executes on the engine or the shard simulator, writes results, and builds
// reports.  Kept out of main() so tests can drive whole runs in-process.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g4s/decision_tree.hpp"
#include "g4s/features.hpp"
#include "g4s/report.hpp"
#include "g4s/routines.hpp"

namespace g4s {

struct RunConfig {
  OpKind op = OpKind::MV;
  std::string a_path;  // left matrix (.mtx or .g4s)
  std::string b_path;  // right matrix for add / mm / compose
  std::string x_path;  // vector operand for mv
  std::string u_path;  // rank-1 column
  std::string w_path;  // rank-1 row
  bool conjugate = false;

  std::optional<ExecutionStrategy> flags;  // explicit strategy, wins over tree
  std::string tree_path;                   // decision tree JSON
  std::uint64_t shards = 0;  // 0 runs the engine, >= 1 the shard simulator
  bool migrate = false;

  std::string out_path;
  int workers = 0;
  std::uint64_t seed = 42;
  bool verify = false;
};

ReportDocument run_job(const RunConfig& cfg);

struct RoutineConfig {
  RoutineKind kind = RoutineKind::MantleForce;
  std::vector<std::string> matrix_paths;  // stiffness / chain factors / coupling
  std::string vector_path;                // u / v / p
  std::string f0_path;                    // initial force, mantle-force only
  std::string out_path;
  int workers = 0;
  std::uint64_t seed = 42;
  bool verify = false;
};

ReportDocument run_routine(const RoutineConfig& cfg);

// Property suites behind `verify`.  Results carry no timings, so a rerun
// with the same seed produces byte-identical reports.
struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  double max_rel_error = 0.0;
  bool passed = true;
  std::vector<std::string> counterexample_files;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool passed = true;
};

const std::vector<std::string>& verify_suite_names();
VerifyReport run_verify(const std::string& suite, std::uint64_t seed,
                        const std::string& dump_dir = ".");
nlohmann::json verify_report_json(const VerifyReport& report);

}  // namespace g4s
