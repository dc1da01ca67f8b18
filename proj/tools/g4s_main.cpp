// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end.  Every command prints one JSON object to stdout;
// human-readable messages go to stderr.  Exit codes: 0 success, 1 validation
// or parse failure, 2 internal error, 3 verification failure.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "g4s/bench.hpp"
#include "g4s/graph.hpp"
#include "g4s/graph_io.hpp"
#include "g4s/matrix_market.hpp"
#include "g4s/runner.hpp"
#include "g4s/synth.hpp"

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) g4s::throw_validation("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) g4s::throw_validation("cannot write file: " + path);
  out << text;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

// Options shared by `run`; the strategy flags below count as an explicit
// strategy only when at least one of them is passed.
struct RunOptions {
  std::string op = "mv";
  g4s::RunConfig cfg;
  std::string model;
  bool reorder = false;
  bool split_hubs = false;
  std::uint64_t split_limit = g4s::kDefaultSplitLimit;
  bool bucket = false;
  std::uint64_t bucket_size = g4s::kDefaultBucketSize;
  bool no_merge = false;
  bool replicate = false;
  bool delta = false;
  std::string strategy_mode = "auto";
};

void add_strategy_flags(CLI::App* cmd, RunOptions& opt,
                        std::vector<CLI::Option*>& tracked) {
  tracked.push_back(cmd->add_option("--model", opt.model,
                                    "execution model: vertex-centric or edge-centric")
                        ->check(CLI::IsMember({"vertex-centric", "edge-centric"})));
  tracked.push_back(
      cmd->add_flag("--reorder", opt.reorder, "relabel vertices by community before running"));
  tracked.push_back(
      cmd->add_flag("--split-hubs", opt.split_hubs, "split high in-degree vertices"));
  tracked.push_back(cmd->add_option("--split-limit", opt.split_limit,
                                    "in-degree cap for splitting (implies --split-hubs)"));
  tracked.push_back(
      cmd->add_flag("--bucket", opt.bucket, "batch updates by destination ranges"));
  tracked.push_back(cmd->add_option("--bucket-size", opt.bucket_size,
                                    "destination range width (implies --bucket)"));
  tracked.push_back(
      cmd->add_flag("--no-merge", opt.no_merge, "ship shard messages without merging"));
  tracked.push_back(cmd->add_flag("--replicate", opt.replicate,
                                  "mirror high in-degree vertices on every shard"));
  tracked.push_back(
      cmd->add_flag("--delta", opt.delta, "delta-encode shard message batches"));
}

g4s::ExecutionStrategy strategy_from_flags(const RunOptions& opt) {
  g4s::ExecutionStrategy s;
  if (opt.model == "edge-centric") s.model = g4s::ExecutionStrategy::Model::EdgeCentric;
  s.reorder = opt.reorder;
  s.split_hubs = opt.split_hubs;
  s.bucket = opt.bucket;
  s.merge = !opt.no_merge;
  s.replicate_hubs = opt.replicate;
  s.delta_encode = opt.delta;
  s.split_limit = opt.split_limit;
  s.bucket_size = opt.bucket_size;
  return s;
}

int cmd_transform(const std::string& in_path, const std::string& out_path) {
  g4s::ParsedMatrix m = [&] {
    try {
      return g4s::parse_matrix_market(read_text_file(in_path));
    } catch (const g4s::Error& e) {
      throw g4s::Error(e.kind(), in_path + ": " + e.what());
    }
  }();
  g4s::ParsedGraph g = std::visit(
      [](const auto& coo) -> g4s::ParsedGraph { return g4s::matrix_to_graph(coo); }, m);
  g4s::write_graph_file(out_path, g);
  std::uint64_t vertices = std::visit([](const auto& gr) { return gr.vertex_count; }, g);
  std::uint64_t edges = std::visit([](const auto& gr) { return gr.edge_count(); }, g);
  print_json({{"op", "transform"},
              {"input", in_path},
              {"output", out_path},
              {"vertices", vertices},
              {"edges", edges}});
  return 0;
}

int cmd_run(RunOptions& opt, bool explicit_flags) {
  opt.cfg.op = g4s::op_kind_from_name(opt.op);
  if (explicit_flags) opt.cfg.flags = strategy_from_flags(opt);
  g4s::ReportDocument report = g4s::run_job(opt.cfg);
  print_json(nlohmann::json(report));
  if (report.verify_passed && !*report.verify_passed) {
    std::cerr << "g4s: result does not match the reference computation\n";
    return 3;
  }
  return 0;
}

int cmd_bench(const std::string& out_path, int workers) {
  std::vector<g4s::BenchSample> samples =
      g4s::run_bench(g4s::default_bench_grid(), workers);
  write_text_file(out_path, g4s::samples_to_json(samples));
  print_json({{"op", "bench"}, {"samples", samples.size()}, {"output", out_path}});
  return 0;
}

int cmd_train(const std::string& samples_path, const std::string& out_path) {
  std::vector<g4s::BenchSample> samples = [&] {
    try {
      return g4s::samples_from_json(read_text_file(samples_path));
    } catch (const g4s::Error& e) {
      throw g4s::Error(e.kind(), samples_path + ": " + e.what());
    }
  }();
  g4s::DecisionTree tree = g4s::train_tree(samples);
  write_text_file(out_path, g4s::tree_to_json(tree));
  print_json({{"op", "train"},
              {"samples", samples.size()},
              {"nodes", tree.nodes.size()},
              {"depth", tree.depth()},
              {"output", out_path}});
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& dump_dir) {
  g4s::VerifyReport report = g4s::run_verify(suite, seed, dump_dir);
  print_json(g4s::verify_report_json(report));
  if (!report.passed) {
    std::cerr << "g4s: verification failed; counterexample inputs were written"
                 " for replay\n";
    return 3;
  }
  return 0;
}

int cmd_routine(const g4s::RoutineConfig& cfg) {
  g4s::ReportDocument report = g4s::run_routine(cfg);
  print_json(nlohmann::json(report));
  if (report.verify_passed && !*report.verify_passed) {
    std::cerr << "g4s: routine result does not match the reference computation\n";
    return 3;
  }
  return 0;
}

int cmd_gen(const std::string& kind, std::uint64_t n, std::uint64_t seed,
            const std::string& out_path) {
  g4s::CooMatrix<double> m = g4s::synth_by_name(kind, n, seed);
  g4s::write_matrix_market_file(out_path, g4s::ParsedMatrix(m));
  print_json({{"op", "gen"},
              {"kind", kind},
              {"n", n},
              {"seed", seed},
              {"nnz", m.nnz()},
              {"output", out_path}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix computation through a gather/apply graph engine"};
  app.require_subcommand(1);

  // transform
  std::string t_in, t_out;
  CLI::App* transform = app.add_subcommand(
      "transform", "rewrite a matrix file as a binary graph file");
  transform->add_option("input", t_in, "matrix file to read")->required();
  transform->add_option("-o,--output", t_out, "graph file to write")->required();

  // run
  RunOptions run_opt;
  std::vector<CLI::Option*> strategy_opts;
  CLI::App* run = app.add_subcommand("run", "execute one matrix operation");
  run->add_option("--op", run_opt.op, "operation: mv, add, mm, compose or rank1")
      ->check(CLI::IsMember({"mv", "add", "mm", "compose", "rank1"}));
  run->add_option("--a", run_opt.cfg.a_path, "left matrix file")->required();
  run->add_option("--b", run_opt.cfg.b_path, "right matrix file (add, mm, compose)");
  run->add_option("--x", run_opt.cfg.x_path, "vector file (mv)");
  run->add_option("--u", run_opt.cfg.u_path, "column vector file (rank1)");
  run->add_option("--w", run_opt.cfg.w_path, "row vector file (rank1)");
  run->add_flag("--conjugate", run_opt.cfg.conjugate,
                "conjugate the row vector (rank1)");
  add_strategy_flags(run, run_opt, strategy_opts);
  run->add_option("--strategy", run_opt.strategy_mode,
                  "strategy selection mode (auto)")
      ->check(CLI::IsMember({"auto"}));
  run->add_option("--tree", run_opt.cfg.tree_path, "trained strategy tree JSON");
  run->add_option("--shards", run_opt.cfg.shards,
                  "run on the shard simulator with this many shards");
  run->add_flag("--migrate", run_opt.cfg.migrate,
                "let the shard simulator move vertices between shards");
  run->add_option("-o,--output", run_opt.cfg.out_path, "result file");
  run->add_option("--workers", run_opt.cfg.workers, "worker thread cap");
  run->add_option("--seed", run_opt.cfg.seed, "random seed recorded in the report");
  run->add_flag("--verify", run_opt.cfg.verify,
                "also compute the reference result and compare");

  // bench
  std::string bench_out;
  int bench_workers = 1;
  CLI::App* bench = app.add_subcommand(
      "bench", "time every candidate strategy on the standard grid");
  bench->add_option("-o,--output", bench_out, "samples JSON file")->required();
  bench->add_option("--workers", bench_workers, "worker thread cap");

  // train
  std::string train_samples, train_out;
  CLI::App* train = app.add_subcommand(
      "train", "fit the strategy selection tree from bench samples");
  train->add_option("--samples", train_samples, "samples JSON from bench")->required();
  train->add_option("-o,--output", train_out, "tree JSON file")->required();

  // verify
  std::string verify_suite = "all";
  std::uint64_t verify_seed = 42;
  std::string verify_dump = ".";
  CLI::App* verify = app.add_subcommand(
      "verify", "run the property suites and report pass/fail");
  verify->add_option("--suite", verify_suite,
                     "all, oracle-grid, split, reorder, distsim, codec or routines");
  verify->add_option("--seed", verify_seed, "seed for the generated cases");
  verify->add_option("--dump-dir", verify_dump,
                     "directory for counterexample dumps");

  // routine
  CLI::App* routine = app.add_subcommand(
      "routine", "run one of the built-in application kernels");
  routine->require_subcommand(1);
  g4s::RoutineConfig mantle_cfg, chain_cfg, heat_cfg;
  mantle_cfg.kind = g4s::RoutineKind::MantleForce;
  chain_cfg.kind = g4s::RoutineKind::PotentialEnergy;
  heat_cfg.kind = g4s::RoutineKind::HeatCapacity;

  std::string mantle_k, heat_t;
  CLI::App* mantle = routine->add_subcommand(
      "mantle-force", "accumulate stiffness times velocity into a force vector");
  mantle->add_option("--k", mantle_k, "stiffness matrix file")->required();
  mantle->add_option("--u", mantle_cfg.vector_path, "velocity vector file")->required();
  mantle->add_option("--f0", mantle_cfg.f0_path, "initial force vector file");
  mantle->add_option("-o,--output", mantle_cfg.out_path, "result file");
  mantle->add_option("--workers", mantle_cfg.workers, "worker thread cap");
  mantle->add_option("--seed", mantle_cfg.seed, "seed recorded in the report");
  mantle->add_flag("--verify", mantle_cfg.verify, "compare with the reference result");

  CLI::App* chain = routine->add_subcommand(
      "potential-energy", "apply a chain of interaction matrices to a position vector");
  chain->add_option("--chain", chain_cfg.matrix_paths,
                    "comma separated matrix files, applied right to left")
      ->required()
      ->delimiter(',');
  chain->add_option("--v", chain_cfg.vector_path, "position vector file")->required();
  chain->add_option("-o,--output", chain_cfg.out_path, "result file");
  chain->add_option("--workers", chain_cfg.workers, "worker thread cap");
  chain->add_option("--seed", chain_cfg.seed, "seed recorded in the report");
  chain->add_flag("--verify", chain_cfg.verify, "compare with the reference result");

  CLI::App* heat = routine->add_subcommand(
      "heat-capacity", "weight species heat contributions by a coupling matrix");
  heat->add_option("--t", heat_t, "coupling matrix file")->required();
  heat->add_option("--p", heat_cfg.vector_path, "per-species property vector file")
      ->required();
  heat->add_option("-o,--output", heat_cfg.out_path, "result file");
  heat->add_option("--workers", heat_cfg.workers, "worker thread cap");
  heat->add_option("--seed", heat_cfg.seed, "seed recorded in the report");
  heat->add_flag("--verify", heat_cfg.verify, "compare with the reference result");

  // gen
  std::string gen_kind, gen_out;
  std::uint64_t gen_n = 0, gen_seed = 42;
  CLI::App* gen = app.add_subcommand(
      "gen", "write a synthetic matrix in one of the named families");
  gen->add_option("kind", gen_kind, "stiffness, chain or coupling")
      ->required()
      ->check(CLI::IsMember({"stiffness", "chain", "coupling"}));
  gen->add_option("--n", gen_n, "matrix order")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--output", gen_out, "matrix file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(transform)) return cmd_transform(t_in, t_out);
    if (app.got_subcommand(run)) {
      bool explicit_flags = false;
      for (CLI::Option* o : strategy_opts) explicit_flags |= o->count() > 0;
      return cmd_run(run_opt, explicit_flags);
    }
    if (app.got_subcommand(bench)) return cmd_bench(bench_out, bench_workers);
    if (app.got_subcommand(train)) return cmd_train(train_samples, train_out);
    if (app.got_subcommand(verify))
      return cmd_verify(verify_suite, verify_seed, verify_dump);
    if (app.got_subcommand(routine)) {
      if (routine->got_subcommand(mantle)) {
        mantle_cfg.matrix_paths = {mantle_k};
        return cmd_routine(mantle_cfg);
      }
      if (routine->got_subcommand(chain)) return cmd_routine(chain_cfg);
      heat_cfg.matrix_paths = {heat_t};
      return cmd_routine(heat_cfg);
    }
    if (app.got_subcommand(gen)) return cmd_gen(gen_kind, gen_n, gen_seed, gen_out);
  } catch (const g4s::Error& e) {
    std::cerr << "g4s: " << e.what() << "\n";
    switch (e.kind()) {
      case g4s::ErrorKind::Validation:
      case g4s::ErrorKind::Parse:
        return 1;
      case g4s::ErrorKind::Internal:
        return 2;
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "g4s: unexpected failure: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
