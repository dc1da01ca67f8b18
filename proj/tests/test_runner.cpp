// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/runner.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "g4s/graph_io.hpp"
#include "g4s/matrix_market.hpp"
#include "g4s/synth.hpp"
#include "g4s/vector_io.hpp"

namespace {

// Scratch directory removed when the test case ends.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("g4s_runner_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string file(const std::string& name) const { return (path / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::string p = file(name);
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kFixtureA =
    "%%MatrixMarket matrix coordinate real general\n"
    "2 2 2\n"
    "1 2 2\n"
    "2 1 3\n";

nlohmann::json masked(const g4s::ReportDocument& r) {
  nlohmann::json j = r;
  j.erase("wall_time_seconds");
  return j;
}

}  // namespace

TEST_CASE("run_job mv writes the expected vector file") {
  TempDir dir;
  g4s::RunConfig cfg;
  cfg.a_path = dir.write("A.mtx", kFixtureA);
  cfg.x_path = dir.write("x.txt", "1\n4\n");
  cfg.out_path = dir.file("y.txt");

  g4s::ReportDocument report = g4s::run_job(cfg);
  CHECK(slurp(cfg.out_path) == "8\n3\n");
  CHECK(report.op == "mv");
  CHECK(report.strategy_source == "static");
  CHECK(report.result_path == cfg.out_path);
  CHECK_FALSE(report.comm_metrics.has_value());

  nlohmann::json j = report;
  CHECK(j["schema_version"] == 1);
  CHECK(j["result_path"] == cfg.out_path);
  CHECK_FALSE(j.contains("result"));
  CHECK(j["shapes"]["a"] == nlohmann::json::array({2, 2}));
}

TEST_CASE("run_job inline result and oracle check") {
  TempDir dir;
  g4s::RunConfig cfg;
  cfg.a_path = dir.write("A.mtx", kFixtureA);
  cfg.x_path = dir.write("x.txt", "1\n4\n");
  cfg.verify = true;

  g4s::ReportDocument report = g4s::run_job(cfg);
  CHECK(report.inline_result == nlohmann::json::array({8.0, 3.0}));
  REQUIRE(report.verify_passed.has_value());
  CHECK(*report.verify_passed);
  CHECK(*report.max_rel_error_vs_oracle <= 1e-10);

  nlohmann::json j = report;
  CHECK(j.contains("result"));
  CHECK_FALSE(j.contains("result_path"));
}

TEST_CASE("run_job vector length mismatch names both lengths") {
  TempDir dir;
  g4s::RunConfig cfg;
  cfg.a_path = dir.write("A.mtx", kFixtureA);
  cfg.x_path = dir.write("x.txt", "1\n2\n3\n");
  try {
    g4s::run_job(cfg);
    FAIL("expected a validation error");
  } catch (const g4s::Error& e) {
    CHECK(e.kind() == g4s::ErrorKind::Validation);
    std::string msg = e.what();
    CHECK(msg.find("3") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);
  }
}

TEST_CASE("run_job accepts binary graph operands") {
  TempDir dir;
  g4s::CooMatrix<double> a = g4s::synth_stiffness(10, 3);
  std::string mtx_path = dir.file("a.mtx");
  g4s::write_matrix_market_file(mtx_path, g4s::ParsedMatrix(a));
  std::string g4s_path = dir.file("a.g4s");
  g4s::write_graph_file(g4s_path, g4s::ParsedGraph(g4s::matrix_to_graph(a)));
  std::string x_path = dir.file("x.txt");
  g4s::write_vector_file(x_path, g4s::ParsedVector(g4s::random_vector<double>(10, 5)));

  g4s::RunConfig from_mtx;
  from_mtx.a_path = mtx_path;
  from_mtx.x_path = x_path;
  g4s::RunConfig from_graph = from_mtx;
  from_graph.a_path = g4s_path;

  CHECK(g4s::run_job(from_mtx).inline_result ==
        g4s::run_job(from_graph).inline_result);
}

TEST_CASE("run_job strategy precedence") {
  TempDir dir;
  std::string a_path = dir.write("A.mtx", kFixtureA);
  std::string x_path = dir.write("x.txt", "1\n4\n");

  SUBCASE("explicit flags win") {
    g4s::RunConfig cfg;
    cfg.a_path = a_path;
    cfg.x_path = x_path;
    g4s::ExecutionStrategy strat;
    strat.model = g4s::ExecutionStrategy::Model::EdgeCentric;
    strat.reorder = true;
    cfg.flags = strat;
    g4s::ReportDocument report = g4s::run_job(cfg);
    CHECK(report.strategy_source == "flags");
    CHECK(report.strategy_used == strat);
    CHECK(report.inline_result == nlohmann::json::array({8.0, 3.0}));
  }

  SUBCASE("tree file selects the strategy") {
    g4s::DecisionTree tree;
    g4s::TreeNode leaf;
    leaf.feature = -1;
    leaf.leaf.model = g4s::ExecutionStrategy::Model::EdgeCentric;
    tree.nodes.push_back(leaf);
    std::string tree_path = dir.write("tree.json", g4s::tree_to_json(tree));

    g4s::RunConfig cfg;
    cfg.a_path = a_path;
    cfg.x_path = x_path;
    cfg.tree_path = tree_path;
    g4s::ReportDocument report = g4s::run_job(cfg);
    CHECK(report.strategy_source == "tree");
    CHECK(report.strategy_used.model == g4s::ExecutionStrategy::Model::EdgeCentric);
  }

  SUBCASE("flags and tree together are rejected") {
    g4s::RunConfig cfg;
    cfg.a_path = a_path;
    cfg.x_path = x_path;
    cfg.flags = g4s::ExecutionStrategy{};
    cfg.tree_path = dir.write("tree.json", "{}");
    CHECK_THROWS_AS(g4s::run_job(cfg), g4s::Error);
  }
}

TEST_CASE("run_job sharded ops report communication metrics") {
  TempDir dir;
  g4s::CooMatrix<double> a = g4s::random_matrix<double>(
      [] {
        g4s::MatrixDescriptor d;
        d.rows = d.cols = 24;
        return d;
      }(),
      0.2, 11);
  g4s::CooMatrix<double> b = g4s::random_matrix<double>(a.desc(), 0.2, 12);
  std::string a_path = dir.file("a.mtx");
  std::string b_path = dir.file("b.mtx");
  g4s::write_matrix_market_file(a_path, g4s::ParsedMatrix(a));
  g4s::write_matrix_market_file(b_path, g4s::ParsedMatrix(b));

  for (const char* op : {"mv", "add", "mm", "compose", "rank1"}) {
    g4s::RunConfig cfg;
    cfg.op = g4s::op_kind_from_name(op);
    cfg.a_path = a_path;
    cfg.b_path = b_path;
    cfg.x_path = dir.file("x.txt");
    cfg.u_path = dir.file("u.txt");
    cfg.w_path = dir.file("w.txt");
    g4s::write_vector_file(cfg.x_path,
                           g4s::ParsedVector(g4s::random_vector<double>(24, 13)));
    g4s::write_vector_file(cfg.u_path,
                           g4s::ParsedVector(g4s::random_vector<double>(24, 14)));
    g4s::write_vector_file(cfg.w_path,
                           g4s::ParsedVector(g4s::random_vector<double>(24, 15)));
    cfg.shards = 3;
    cfg.verify = true;
    cfg.out_path = dir.file("out");

    g4s::ReportDocument report = g4s::run_job(cfg);
    CHECK(*report.verify_passed);
    REQUIRE(report.comm_metrics.has_value());
    CHECK(!report.comm_metrics->supersteps.empty());

    nlohmann::json j = report;
    const auto& sm = j["comm_metrics"]["supersteps"][0];
    for (const char* key : {"pre_merge", "post_merge", "batches", "raw_bytes",
                            "encoded_bytes", "shard_loads", "migrations"}) {
      CHECK(sm.contains(key));
    }
  }
}

TEST_CASE("run_job reports are deterministic across worker counts") {
  TempDir dir;
  g4s::CooMatrix<double> a = g4s::random_matrix<double>(
      [] {
        g4s::MatrixDescriptor d;
        d.rows = d.cols = 40;
        return d;
      }(),
      0.15, 21);
  std::string a_path = dir.file("a.mtx");
  g4s::write_matrix_market_file(a_path, g4s::ParsedMatrix(a));
  std::string x_path = dir.file("x.txt");
  g4s::write_vector_file(x_path,
                         g4s::ParsedVector(g4s::random_vector<double>(40, 22)));

  nlohmann::json first;
  std::string first_bytes;
  for (int workers : {1, 2, 8}) {
    g4s::RunConfig cfg;
    cfg.a_path = a_path;
    cfg.x_path = x_path;
    cfg.workers = workers;
    cfg.out_path = dir.file("y_" + std::to_string(workers) + ".txt");
    nlohmann::json j = masked(g4s::run_job(cfg));
    j.erase("result_path");
    std::string bytes = slurp(cfg.out_path);
    if (workers == 1) {
      first = j;
      first_bytes = bytes;
    } else {
      CHECK(j == first);
      CHECK(bytes == first_bytes);
    }
  }
}

TEST_CASE("run_job rejects mixed scalar kinds") {
  TempDir dir;
  g4s::RunConfig cfg;
  cfg.op = g4s::OpKind::Add;
  cfg.a_path = dir.write("a.mtx", kFixtureA);
  cfg.b_path = dir.write("b.mtx",
                         "%%MatrixMarket matrix coordinate complex general\n"
                         "2 2 1\n"
                         "1 1 1.0 2.0\n");
  CHECK_THROWS_AS(g4s::run_job(cfg), g4s::Error);

  g4s::RunConfig mv;
  mv.a_path = cfg.a_path;
  mv.x_path = dir.write("x.txt", "1 2\n3 4\n");  // complex vector, real matrix
  CHECK_THROWS_AS(g4s::run_job(mv), g4s::Error);
}

TEST_CASE("run_job promotes real vectors for complex matrices") {
  TempDir dir;
  g4s::RunConfig cfg;
  cfg.a_path = dir.write("a.mtx",
                         "%%MatrixMarket matrix coordinate complex general\n"
                         "2 2 2\n"
                         "1 1 1.0 1.0\n"
                         "2 2 2.0 0.0\n");
  cfg.x_path = dir.write("x.txt", "1\n2\n");
  cfg.verify = true;
  g4s::ReportDocument report = g4s::run_job(cfg);
  CHECK(*report.verify_passed);
  CHECK(report.inline_result ==
        nlohmann::json::array({nlohmann::json::array({1.0, 1.0}),
                               nlohmann::json::array({4.0, 0.0})}));
}

TEST_CASE("run_routine drives all three kernels") {
  TempDir dir;
  std::string u_path = dir.file("u.txt");
  g4s::write_vector_file(u_path,
                         g4s::ParsedVector(g4s::random_vector<double>(12, 31)));

  SUBCASE("mantle-force accumulates into the initial force") {
    g4s::RoutineConfig cfg;
    cfg.kind = g4s::RoutineKind::MantleForce;
    std::string k_path = dir.file("k.mtx");
    g4s::write_matrix_market_file(
        k_path, g4s::ParsedMatrix(g4s::synth_stiffness(12, 32)));
    cfg.matrix_paths = {k_path};
    cfg.vector_path = u_path;
    cfg.f0_path = u_path;
    cfg.verify = true;
    g4s::ReportDocument report = g4s::run_routine(cfg);
    CHECK(report.op == "mantle-force");
    CHECK(*report.verify_passed);
    CHECK(report.shapes.contains("f0"));
  }

  SUBCASE("potential-energy applies the chain right to left") {
    g4s::RoutineConfig cfg;
    cfg.kind = g4s::RoutineKind::PotentialEnergy;
    for (int i = 0; i < 3; ++i) {
      std::string p = dir.file("c" + std::to_string(i) + ".mtx");
      g4s::write_matrix_market_file(
          p, g4s::ParsedMatrix(g4s::synth_chain_factor(12, 40 + i)));
      cfg.matrix_paths.push_back(p);
    }
    cfg.vector_path = u_path;
    cfg.verify = true;
    g4s::ReportDocument report = g4s::run_routine(cfg);
    CHECK(report.op == "potential-energy");
    CHECK(*report.verify_passed);
    CHECK(report.shapes["chain"].size() == 3);
  }

  SUBCASE("heat-capacity weights the property vector") {
    g4s::RoutineConfig cfg;
    cfg.kind = g4s::RoutineKind::HeatCapacity;
    std::string t_path = dir.file("t.mtx");
    g4s::write_matrix_market_file(t_path,
                                  g4s::ParsedMatrix(g4s::synth_coupling(12, 50)));
    cfg.matrix_paths = {t_path};
    cfg.vector_path = u_path;
    cfg.verify = true;
    g4s::ReportDocument report = g4s::run_routine(cfg);
    CHECK(report.op == "heat-capacity");
    CHECK(*report.verify_passed);
  }

  SUBCASE("wrong vector length is a validation error") {
    g4s::RoutineConfig cfg;
    cfg.kind = g4s::RoutineKind::HeatCapacity;
    std::string t_path = dir.file("t8.mtx");
    g4s::write_matrix_market_file(t_path,
                                  g4s::ParsedMatrix(g4s::synth_coupling(8, 51)));
    cfg.matrix_paths = {t_path};
    cfg.vector_path = u_path;  // length 12 against an 8x8 matrix
    CHECK_THROWS_AS(g4s::run_routine(cfg), g4s::Error);
  }
}

TEST_CASE("run_verify covers every suite and repeats byte for byte") {
  TempDir dir;
  g4s::VerifyReport report = g4s::run_verify("all", 7, dir.file(""));
  CHECK(report.passed);
  CHECK(report.suites.size() == g4s::verify_suite_names().size());
  for (const g4s::SuiteResult& suite : report.suites) {
    CHECK(suite.passed);
    CHECK(suite.cases > 0);
    CHECK(suite.counterexample_files.empty());
  }

  g4s::VerifyReport again = g4s::run_verify("all", 7, dir.file(""));
  CHECK(g4s::verify_report_json(report).dump(2) ==
        g4s::verify_report_json(again).dump(2));

  CHECK_THROWS_AS(g4s::run_verify("bogus", 7, dir.file("")), g4s::Error);
}
