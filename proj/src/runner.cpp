// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/runner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "g4s/decision_tree.hpp"
#include "g4s/engine.hpp"
#include "g4s/graph_cache.hpp"
#include "g4s/graph_io.hpp"
#include "g4s/matrix_market.hpp"
#include "g4s/optimizer.hpp"
#include "g4s/oracle.hpp"
#include "g4s/routines.hpp"
#include "g4s/synth.hpp"
#include "g4s/vector_io.hpp"

namespace g4s {

namespace {

constexpr double kTolReal = 1e-10;
constexpr double kTolComplex = 1e-9;
constexpr double kTolChain = 1e-9;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has_graph_magic(const std::string& bytes) {
  return bytes.size() >= 4 && bytes.compare(0, 4, "G4S1") == 0;
}

// Matrix operands load from Matrix Market text or from the binary graph
// container, which comes back as a General matrix over the recorded shape.
ParsedMatrix load_matrix(const std::string& path) {
  std::string bytes = read_file(path);
  if (has_graph_magic(bytes)) {
    ParsedGraph g = deserialize_graph(
        std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
    return std::visit(
        [](const auto& graph) -> ParsedMatrix { return graph_to_matrix(graph); },
        g);
  }
  try {
    return parse_matrix_market(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

template <typename T>
const CooMatrix<T>& matrix_as(const ParsedMatrix& m, const std::string& path) {
  if (const auto* typed = std::get_if<CooMatrix<T>>(&m)) return *typed;
  throw_validation(path + ": operands must share one scalar kind");
}

template <typename T>
std::vector<T> vector_as(const ParsedVector& v, const std::string& path) {
  if (const auto* typed = std::get_if<std::vector<T>>(&v)) return *typed;
  if constexpr (is_complex_v<T>) {
    const auto& reals = std::get<std::vector<double>>(v);
    return std::vector<T>(reals.begin(), reals.end());
  } else {
    throw_validation(path + ": vector is complex but the matrix is real");
  }
}

template <typename T>
GraphCache<T>& transform_cache() {
  static GraphCache<T> cache;
  return cache;
}

template <typename T>
DenseMatrix<T> dense_of_graph(const Graph<T>& g) {
  DenseMatrix<T> d(g.origin.rows, g.origin.cols);
  for (std::uint64_t v = 0; v < g.vertex_count && v < d.rows; ++v) {
    auto src = g.in_sources(v);
    auto w = g.in_weights(v);
    for (std::size_t k = 0; k < src.size(); ++k) d.at(v, src[k]) += w[k];
  }
  return d;
}

template <typename T>
CooMatrix<T> coo_of_dense(const DenseMatrix<T>& d) {
  std::vector<Entry<T>> entries;
  for (std::uint64_t i = 0; i < d.rows; ++i) {
    for (std::uint64_t j = 0; j < d.cols; ++j) {
      if (!is_zero(d.at(i, j))) entries.push_back({i, j, d.at(i, j)});
    }
  }
  MatrixDescriptor desc;
  desc.rows = d.rows;
  desc.cols = d.cols;
  desc.scalar = scalar_kind_of<T>();
  return CooMatrix<T>(desc, std::move(entries));
}

nlohmann::json scalar_json(double v) { return v; }
nlohmann::json scalar_json(const Complex& v) {
  return nlohmann::json::array({v.real(), v.imag()});
}

template <typename T>
nlohmann::json vector_json(const std::vector<T>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const T& x : v) j.push_back(scalar_json(x));
  return j;
}

template <typename T>
nlohmann::json matrix_json(const CooMatrix<T>& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const Entry<T>& e : m.entries()) {
    entries.push_back(nlohmann::json::array({e.row, e.col, scalar_json(e.value)}));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

DistPolicies policies_for(const ExecutionStrategy& strat, const RunConfig& cfg) {
  DistPolicies pol;
  pol.merge = strat.merge;
  pol.replicate_hubs = strat.replicate_hubs;
  pol.encode = strat.delta_encode ? EncodeMode::Delta : EncodeMode::Raw;
  pol.migrate = cfg.migrate;
  pol.replicate_threshold = strat.split_limit;
  return pol;
}

DecisionTree load_tree(const std::string& path) {
  try {
    return tree_from_json(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

struct ChosenStrategy {
  ExecutionStrategy strategy;
  std::string source;
};

ChosenStrategy choose_strategy(const RunConfig& cfg, const FeatureVector& features) {
  if (cfg.flags && !cfg.tree_path.empty()) {
    throw_validation("explicit strategy flags and --tree are mutually exclusive");
  }
  if (cfg.flags) {
    validate_strategy(*cfg.flags);
    return {*cfg.flags, "flags"};
  }
  if (!cfg.tree_path.empty()) {
    return {select_strategy(load_tree(cfg.tree_path), features), "tree"};
  }
  return {static_fallback(features), "static"};
}

nlohmann::json shape_json(const MatrixDescriptor& d) {
  return nlohmann::json::array({d.rows, d.cols});
}

template <typename T>
ReportDocument run_typed(const RunConfig& cfg, const ParsedMatrix& parsed_a) {
  const CooMatrix<T>& a = matrix_as<T>(parsed_a, cfg.a_path);
  auto graph_a = transform_cache<T>().get_or_transform(a);

  ReportDocument report;
  report.op = op_kind_name(cfg.op);
  report.shards = cfg.shards;
  report.seed = cfg.seed;
  report.shapes["a"] = shape_json(a.desc());

  FeatureVector features =
      extract_features(cfg.op, a.desc(), graph_a->edge_count());
  ChosenStrategy chosen = choose_strategy(cfg, features);
  report.strategy_used = chosen.strategy;
  report.strategy_source = chosen.source;

  const ExecutionStrategy& strat = chosen.strategy;
  DistPolicies pol = policies_for(strat, cfg);
  std::optional<CommMetrics> metrics;

  // Operands beyond A, loaded before the clock starts.
  std::vector<T> x, u, w;
  std::optional<CooMatrix<T>> b_coo;
  std::shared_ptr<const Graph<T>> graph_b;
  DenseMatrix<T> b_dense(1, 1);
  switch (cfg.op) {
    case OpKind::MV:
      if (cfg.x_path.empty()) throw_validation("mv requires --x");
      x = vector_as<T>(read_vector_file(cfg.x_path), cfg.x_path);
      report.shapes["x"] = nlohmann::json::array({x.size()});
      break;
    case OpKind::Add:
    case OpKind::Compose:
    case OpKind::MM: {
      if (cfg.b_path.empty()) {
        throw_validation(std::string(op_kind_name(cfg.op)) + " requires --b");
      }
      ParsedMatrix parsed_b = load_matrix(cfg.b_path);
      b_coo = matrix_as<T>(parsed_b, cfg.b_path);
      report.shapes["b"] = shape_json(b_coo->desc());
      if (cfg.op == OpKind::MM) {
        b_dense = to_dense(*b_coo);
      } else {
        graph_b = transform_cache<T>().get_or_transform(*b_coo);
      }
      break;
    }
    case OpKind::Rank1:
      if (cfg.u_path.empty() || cfg.w_path.empty()) {
        throw_validation("rank1 requires --u and --w");
      }
      u = vector_as<T>(read_vector_file(cfg.u_path), cfg.u_path);
      w = vector_as<T>(read_vector_file(cfg.w_path), cfg.w_path);
      report.shapes["u"] = nlohmann::json::array({u.size()});
      report.shapes["w"] = nlohmann::json::array({w.size()});
      break;
  }

  // Execute, timing only the operation itself.
  std::vector<T> vec_result;
  std::optional<Graph<T>> graph_result;
  std::optional<DenseMatrix<T>> dense_result;
  auto t0 = std::chrono::steady_clock::now();
  switch (cfg.op) {
    case OpKind::MV:
      if (cfg.shards == 0) {
        vec_result = graph_mv(*graph_a, x, strat, cfg.workers);
      } else {
        auto [y, m] = dist_mv(*graph_a, x, cfg.shards, pol);
        vec_result = std::move(y);
        metrics = std::move(m);
      }
      break;
    case OpKind::Add:
      if (cfg.shards == 0) {
        graph_result = graph_add(*graph_a, *graph_b);
      } else {
        auto [sum, m] = dist_add(*graph_a, *graph_b, cfg.shards, pol);
        graph_result = std::move(sum);
        metrics = std::move(m);
      }
      break;
    case OpKind::MM:
      if (cfg.shards == 0) {
        dense_result = graph_mm(*graph_a, b_dense, strat, cfg.workers);
      } else {
        auto [prod, m] = dist_mm(*graph_a, b_dense, cfg.shards, pol);
        dense_result = std::move(prod);
        metrics = std::move(m);
      }
      break;
    case OpKind::Compose:
      if (cfg.shards == 0) {
        graph_result = compose_graphs(*graph_a, *graph_b, cfg.workers);
      } else {
        auto [prod, m] = dist_compose(*graph_a, *graph_b, cfg.shards, pol);
        graph_result = std::move(prod);
        metrics = std::move(m);
      }
      break;
    case OpKind::Rank1:
      if (cfg.shards == 0) {
        graph_result = graph_rank1_update(*graph_a, u, w, cfg.conjugate);
      } else {
        auto [updated, m] = dist_rank1(*graph_a, u, w, cfg.conjugate, cfg.shards, pol);
        graph_result = std::move(updated);
        metrics = std::move(m);
      }
      break;
  }
  auto t1 = std::chrono::steady_clock::now();
  report.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.comm_metrics = std::move(metrics);

  // Convert, verify, write.
  std::optional<CooMatrix<T>> matrix_result;
  if (graph_result) matrix_result = graph_to_matrix(*graph_result);
  if (dense_result) matrix_result = coo_of_dense(*dense_result);

  if (cfg.verify) {
    double err = 0.0;
    switch (cfg.op) {
      case OpKind::MV:
        err = max_rel_error(vec_result, oracle_mv(a, x));
        break;
      case OpKind::Add:
        err = max_rel_error(dense_of_graph(*graph_result), oracle_add(a, *b_coo));
        break;
      case OpKind::MM:
        err = max_rel_error(*dense_result, oracle_mm(to_dense(a), b_dense));
        break;
      case OpKind::Compose:
        err = max_rel_error(dense_of_graph(*graph_result), oracle_mm(a, *b_coo));
        break;
      case OpKind::Rank1:
        err = max_rel_error(dense_of_graph(*graph_result),
                            oracle_rank1(a, u, w, cfg.conjugate));
        break;
    }
    report.max_rel_error_vs_oracle = err;
    report.verify_passed = err <= comparison_tolerance<T>();
  }

  if (!vec_result.empty() || cfg.op == OpKind::MV) {
    report.shapes["result"] = nlohmann::json::array({vec_result.size()});
    if (cfg.out_path.empty()) {
      report.inline_result = vector_json(vec_result);
    } else {
      write_vector_file(cfg.out_path, ParsedVector(vec_result));
      report.result_path = cfg.out_path;
    }
  } else {
    report.shapes["result"] = shape_json(matrix_result->desc());
    if (cfg.out_path.empty()) {
      report.inline_result = matrix_json(*matrix_result);
    } else {
      write_matrix_market_file(cfg.out_path, ParsedMatrix(*matrix_result));
      report.result_path = cfg.out_path;
    }
  }
  return report;
}

template <typename T>
ReportDocument run_routine_typed(const RoutineConfig& cfg,
                                 const std::vector<ParsedMatrix>& mats) {
  ReportDocument report;
  report.op = routine_name(cfg.kind);
  report.shards = 0;
  report.seed = cfg.seed;

  std::vector<CooMatrix<T>> coos;
  std::vector<Graph<T>> graphs;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    coos.push_back(matrix_as<T>(mats[i], cfg.matrix_paths[i]));
    graphs.push_back(matrix_to_graph(coos.back()));
  }

  FeatureVector features =
      extract_features(OpKind::MV, coos.front().desc(), graphs.front().edge_count());
  report.strategy_used = static_fallback(features);
  report.strategy_source = "static";
  const ExecutionStrategy& strat = report.strategy_used;

  auto vec = vector_as<T>(read_vector_file(cfg.vector_path), cfg.vector_path);
  std::vector<T> f0;
  if (!cfg.f0_path.empty()) {
    f0 = vector_as<T>(read_vector_file(cfg.f0_path), cfg.f0_path);
  }

  switch (cfg.kind) {
    case RoutineKind::MantleForce:
      report.shapes["k"] = shape_json(coos.front().desc());
      report.shapes["u"] = nlohmann::json::array({vec.size()});
      if (!f0.empty()) report.shapes["f0"] = nlohmann::json::array({f0.size()});
      break;
    case RoutineKind::PotentialEnergy: {
      nlohmann::json chain = nlohmann::json::array();
      for (const auto& c : coos) chain.push_back(shape_json(c.desc()));
      report.shapes["chain"] = std::move(chain);
      report.shapes["v"] = nlohmann::json::array({vec.size()});
      break;
    }
    case RoutineKind::HeatCapacity:
      report.shapes["t"] = shape_json(coos.front().desc());
      report.shapes["p"] = nlohmann::json::array({vec.size()});
      break;
  }

  std::vector<T> result;
  auto t0 = std::chrono::steady_clock::now();
  switch (cfg.kind) {
    case RoutineKind::MantleForce:
      result = mantle_force(graphs.front(), vec, f0, strat, cfg.workers);
      break;
    case RoutineKind::PotentialEnergy:
      result = potential_energy_chain(graphs, vec, strat, cfg.workers);
      break;
    case RoutineKind::HeatCapacity:
      result = heat_capacity(graphs.front(), vec, strat, cfg.workers);
      break;
  }
  auto t1 = std::chrono::steady_clock::now();
  report.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (cfg.verify) {
    double err = 0.0;
    bool ok = true;
    switch (cfg.kind) {
      case RoutineKind::MantleForce: {
        auto want = oracle_mv(coos.front(), vec);
        for (std::size_t i = 0; i < f0.size(); ++i) want[i] += f0[i];
        err = max_rel_error(result, want);
        ok = err <= comparison_tolerance<T>();
        break;
      }
      case RoutineKind::PotentialEnergy: {
        auto nested = vec;
        for (std::size_t i = coos.size(); i-- > 0;) {
          nested = oracle_mv(coos[i], nested);
        }
        double vs_oracle = max_rel_error(result, nested);
        double vs_composed = max_rel_error(
            result, potential_energy_chain_composed(graphs, vec, strat, cfg.workers));
        err = std::max(vs_oracle, vs_composed);
        ok = vs_oracle <= comparison_tolerance<T>() && vs_composed <= kTolChain;
        break;
      }
      case RoutineKind::HeatCapacity:
        err = max_rel_error(result, oracle_mv(coos.front(), vec));
        ok = err <= comparison_tolerance<T>();
        break;
    }
    report.max_rel_error_vs_oracle = err;
    report.verify_passed = ok;
  }

  report.shapes["result"] = nlohmann::json::array({result.size()});
  if (cfg.out_path.empty()) {
    report.inline_result = vector_json(result);
  } else {
    write_vector_file(cfg.out_path, ParsedVector(result));
    report.result_path = cfg.out_path;
  }
  return report;
}

}  // namespace

ReportDocument run_job(const RunConfig& cfg) {
  if (cfg.a_path.empty()) throw_validation("every run needs --a");
  ParsedMatrix a = load_matrix(cfg.a_path);
  if (std::holds_alternative<CooMatrix<double>>(a)) {
    return run_typed<double>(cfg, a);
  }
  return run_typed<Complex>(cfg, a);
}

ReportDocument run_routine(const RoutineConfig& cfg) {
  if (cfg.matrix_paths.empty()) throw_validation("routine needs a matrix operand");
  std::vector<ParsedMatrix> mats;
  for (const std::string& path : cfg.matrix_paths) mats.push_back(load_matrix(path));
  bool complex = false;
  for (const ParsedMatrix& m : mats) {
    if (std::holds_alternative<CooMatrix<Complex>>(m)) complex = true;
  }
  return complex ? run_routine_typed<Complex>(cfg, mats)
                 : run_routine_typed<double>(cfg, mats);
}

// ---------------------------------------------------------------------------
// Verify suites

namespace {

struct SuiteContext {
  SuiteResult result;
  std::string dump_dir;
  std::uint64_t seed = 0;

  SuiteContext(std::string name, std::string dir, std::uint64_t s)
      : dump_dir(std::move(dir)), seed(s) {
    result.name = std::move(name);
  }

  // Records one case; on the first failure asks the caller to dump its
  // inputs for replay.
  template <typename DumpFn>
  void record(double err, double tol, DumpFn&& dump) {
    ++result.cases;
    result.max_rel_error = std::max(result.max_rel_error, err);
    if (err > tol && result.passed) {
      result.passed = false;
      dump(*this);
    }
  }

  std::string dump_path(const std::string& stem) const {
    return dump_dir + "/g4s-counterexample-" + result.name + "-" + stem;
  }

  void dump_matrix(const std::string& stem, const ParsedMatrix& m) {
    std::string path = dump_path(stem);
    write_matrix_market_file(path, m);
    result.counterexample_files.push_back(path);
  }

  void dump_vector(const std::string& stem, const ParsedVector& v) {
    std::string path = dump_path(stem);
    write_vector_file(path, v);
    result.counterexample_files.push_back(path);
  }
};

MatrixDescriptor verify_desc(std::uint64_t n, MatrixKind kind,
                             ScalarKind scalar = ScalarKind::Real64) {
  MatrixDescriptor d;
  d.rows = d.cols = n;
  d.kind = kind;
  d.scalar = scalar;
  if (kind == MatrixKind::Banded) {
    d.band_lower = std::min<std::uint64_t>(2, n - 1);
    d.band_upper = std::min<std::uint64_t>(1, n - 1);
  }
  return d;
}

template <typename T>
void oracle_grid_cases(SuiteContext& ctx, MatrixKind kind, double density) {
  constexpr double tol = comparison_tolerance<T>();
  for (std::uint64_t n : {2ull, 8ull, 33ull}) {
    for (std::uint64_t s : {ctx.seed, ctx.seed + 1}) {
      auto desc = verify_desc(n, kind, scalar_kind_of<T>());
      CooMatrix<T> a = random_matrix<T>(desc, density, s);
      Graph<T> ga = matrix_to_graph(a);
      auto dump_a = [&](SuiteContext& c) { c.dump_matrix("a.mtx", ParsedMatrix(a)); };

      auto x = random_vector<T>(n, s + 1000);
      ctx.record(max_rel_error(graph_mv(ga, x), oracle_mv(a, x)), tol,
                 [&](SuiteContext& c) {
                   dump_a(c);
                   c.dump_vector("x.txt", ParsedVector(x));
                 });

      MatrixDescriptor gen = verify_desc(n, MatrixKind::General, scalar_kind_of<T>());
      CooMatrix<T> b = random_matrix<T>(gen, 0.3, s + 2000);
      ctx.record(max_rel_error(dense_of_graph(graph_add(ga, matrix_to_graph(b))),
                               oracle_add(a, b)),
                 tol, [&](SuiteContext& c) {
                   dump_a(c);
                   c.dump_matrix("b.mtx", ParsedMatrix(b));
                 });

      DenseMatrix<T> cmat = random_dense<T>(n, std::min<std::uint64_t>(n, 4), s + 3000);
      ctx.record(max_rel_error(graph_mm(ga, cmat), oracle_mm(to_dense(a), cmat)), tol,
                 [&](SuiteContext& c) {
                   dump_a(c);
                   c.dump_matrix("b.mtx", ParsedMatrix(coo_of_dense(cmat)));
                 });

      ctx.record(max_rel_error(dense_of_graph(compose_graphs(ga, matrix_to_graph(b))),
                               oracle_mm(a, b)),
                 tol, [&](SuiteContext& c) {
                   dump_a(c);
                   c.dump_matrix("b.mtx", ParsedMatrix(b));
                 });

      auto uvec = random_vector<T>(n, s + 4000);
      auto wvec = random_vector<T>(n, s + 5000);
      bool conj = is_complex_v<T>;
      ctx.record(
          max_rel_error(dense_of_graph(graph_rank1_update(ga, uvec, wvec, conj)),
                        oracle_rank1(a, uvec, wvec, conj)),
          tol, [&](SuiteContext& c) {
            dump_a(c);
            c.dump_vector("u.txt", ParsedVector(uvec));
            c.dump_vector("w.txt", ParsedVector(wvec));
          });
    }
  }
}

SuiteResult suite_oracle_grid(std::uint64_t seed, const std::string& dump_dir) {
  SuiteContext ctx{"oracle-grid", dump_dir, seed};
  oracle_grid_cases<double>(ctx, MatrixKind::General, 1.0);
  oracle_grid_cases<double>(ctx, MatrixKind::General, 0.05);
  oracle_grid_cases<double>(ctx, MatrixKind::Symmetric, 0.3);
  oracle_grid_cases<double>(ctx, MatrixKind::TriangularUpper, 0.3);
  oracle_grid_cases<double>(ctx, MatrixKind::Banded, 1.0);
  oracle_grid_cases<Complex>(ctx, MatrixKind::Hermitian, 0.3);
  return ctx.result;
}

SuiteResult suite_split(std::uint64_t seed, const std::string& dump_dir) {
  SuiteContext ctx{"split", dump_dir, seed};
  for (std::uint64_t s = seed; s < seed + 5; ++s) {
    auto desc = verify_desc(48, MatrixKind::General);
    CooMatrix<double> a = random_matrix<double>(desc, 0.3, s);
    Graph<double> g = matrix_to_graph(a);
    auto x = random_vector<double>(48, s + 100);
    auto baseline = graph_mv(g, x);
    for (std::uint64_t limit : {1ull, 3ull, 10ull}) {
      ExecutionStrategy strat;
      strat.split_hubs = true;
      strat.split_limit = limit;
      double err = max_rel_error(graph_mv(g, x, strat), baseline);

      auto [split_graph, plan] = split_hubs(g, limit);
      std::uint64_t worst_degree = 0;
      for (std::uint64_t v = 0; v < split_graph.vertex_count; ++v) {
        worst_degree = std::max(worst_degree, split_graph.in_degree(v));
      }
      if (worst_degree > limit) err = 1.0;  // structural violation fails the case
      ctx.record(err, kTolReal, [&](SuiteContext& c) {
        c.dump_matrix("a.mtx", ParsedMatrix(a));
        c.dump_vector("x.txt", ParsedVector(x));
      });
    }
  }
  return ctx.result;
}

SuiteResult suite_reorder(std::uint64_t seed, const std::string& dump_dir) {
  SuiteContext ctx{"reorder", dump_dir, seed};
  for (std::uint64_t s = seed; s < seed + 5; ++s) {
    auto desc = verify_desc(60, MatrixKind::General);
    CooMatrix<double> a = random_matrix<double>(desc, 0.1, s);
    Graph<double> g = matrix_to_graph(a);
    auto x = random_vector<double>(60, s + 100);
    ExecutionStrategy strat;
    strat.reorder = true;
    ctx.record(max_rel_error(graph_mv(g, x, strat), graph_mv(g, x)), kTolReal,
               [&](SuiteContext& c) {
                 c.dump_matrix("a.mtx", ParsedMatrix(a));
                 c.dump_vector("x.txt", ParsedVector(x));
               });
  }
  return ctx.result;
}

SuiteResult suite_distsim(std::uint64_t seed, const std::string& dump_dir) {
  SuiteContext ctx{"distsim", dump_dir, seed};
  for (std::uint64_t s = seed; s < seed + 3; ++s) {
    auto desc = verify_desc(64, MatrixKind::General);
    CooMatrix<double> a = random_matrix<double>(desc, 0.05, s);
    Graph<double> g = matrix_to_graph(a);
    auto x = random_vector<double>(64, s + 100);
    auto baseline = graph_mv(g, x);
    for (std::uint64_t p : {1ull, 2ull, 4ull}) {
      auto [y, metrics] = dist_mv(g, x, p);
      double err = max_rel_error(y, baseline);
      const auto& sm = metrics.supersteps.at(0);
      bool bounds_ok = sm.post_merge <= sm.pre_merge &&
                       sm.batches <= p * (p - 1) &&
                       sm.encoded_bytes <= sm.raw_bytes;
      if (p == 1 && sm.batches != 0) bounds_ok = false;
      if (!bounds_ok) err = 1.0;
      ctx.record(err, kTolReal, [&](SuiteContext& c) {
        c.dump_matrix("a.mtx", ParsedMatrix(a));
        c.dump_vector("x.txt", ParsedVector(x));
      });
    }
  }
  return ctx.result;
}

SuiteResult suite_codec(std::uint64_t seed, const std::string& dump_dir) {
  SuiteContext ctx{"codec", dump_dir, seed};
  Rng rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    MessageBatch<double> batch;
    std::uint64_t count = rng.next_index(40);
    std::uint64_t id = rng.next_index(64);
    for (std::uint64_t k = 0; k < count; ++k) {
      batch.entries.emplace_back(id, rng.next_real(-50.0, 50.0));
      id += rng.next_index(9);
    }
    for (EncodeMode mode : {EncodeMode::Raw, EncodeMode::Delta}) {
      auto encoded = encode_batch(batch, mode);
      auto decoded = decode_batch<double>(encoded.bytes);
      bool same = decoded.entries == batch.entries;
      bool sized = mode == EncodeMode::Raw ||
                   encoded.bytes.size() <=
                       encode_batch(batch, EncodeMode::Raw).bytes.size();
      ctx.record(same && sized ? 0.0 : 1.0, kTolReal, [&](SuiteContext& c) {
        std::vector<double> values;
        std::vector<double> ids;
        for (auto& [key, value] : batch.entries) {
          ids.push_back(static_cast<double>(key));
          values.push_back(value);
        }
        c.dump_vector("ids.txt", ParsedVector(ids));
        c.dump_vector("values.txt", ParsedVector(values));
      });
    }
  }
  return ctx.result;
}

SuiteResult suite_routines(std::uint64_t seed, const std::string& dump_dir) {
  SuiteContext ctx{"routines", dump_dir, seed};
  for (std::uint64_t s = seed; s < seed + 3; ++s) {
    CooMatrix<double> k = synth_stiffness(16, s);
    auto u = random_vector<double>(16, s + 10);
    auto f0 = random_vector<double>(16, s + 20);
    auto want = oracle_mv(k, u);
    for (std::size_t i = 0; i < want.size(); ++i) want[i] += f0[i];
    ctx.record(max_rel_error(mantle_force(matrix_to_graph(k), u, f0), want),
               kTolReal, [&](SuiteContext& c) {
                 c.dump_matrix("k.mtx", ParsedMatrix(k));
                 c.dump_vector("u.txt", ParsedVector(u));
                 c.dump_vector("f0.txt", ParsedVector(f0));
               });

    std::vector<CooMatrix<double>> factors;
    std::vector<Graph<double>> chain;
    for (int i = 0; i < 3; ++i) {
      factors.push_back(synth_chain_factor(8, s * 10 + i));
      chain.push_back(matrix_to_graph(factors.back()));
    }
    auto v = random_vector<double>(8, s + 30);
    auto nested = v;
    for (int i = 2; i >= 0; --i) nested = oracle_mv(factors[i], nested);
    auto sequential = potential_energy_chain(chain, v);
    auto composed = potential_energy_chain_composed(chain, v);
    double err = std::max(max_rel_error(sequential, nested),
                          max_rel_error(sequential, composed));
    ctx.record(err, kTolChain, [&](SuiteContext& c) {
      for (int i = 0; i < 3; ++i) {
        c.dump_matrix("chain" + std::to_string(i) + ".mtx", ParsedMatrix(factors[i]));
      }
      c.dump_vector("v.txt", ParsedVector(v));
    });

    CooMatrix<double> t = synth_coupling(16, s);
    auto p = random_vector<double>(16, s + 40);
    ctx.record(max_rel_error(heat_capacity(matrix_to_graph(t), p), oracle_mv(t, p)),
               kTolReal, [&](SuiteContext& c) {
                 c.dump_matrix("t.mtx", ParsedMatrix(t));
                 c.dump_vector("p.txt", ParsedVector(p));
               });
  }
  return ctx.result;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "oracle-grid", "split", "reorder", "distsim", "codec", "routines"};
  return names;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed,
                        const std::string& dump_dir) {
  VerifyReport report;
  report.seed = seed;
  auto want = [&](const std::string& name) {
    return suite == "all" || suite == name;
  };
  bool any = false;
  for (const std::string& name : verify_suite_names()) {
    if (!want(name)) continue;
    any = true;
    SuiteResult r;
    if (name == "oracle-grid") r = suite_oracle_grid(seed, dump_dir);
    if (name == "split") r = suite_split(seed, dump_dir);
    if (name == "reorder") r = suite_reorder(seed, dump_dir);
    if (name == "distsim") r = suite_distsim(seed, dump_dir);
    if (name == "codec") r = suite_codec(seed, dump_dir);
    if (name == "routines") r = suite_routines(seed, dump_dir);
    report.passed = report.passed && r.passed;
    report.suites.push_back(std::move(r));
  }
  if (!any) {
    throw_validation("unknown suite '" + suite + "'; expected all, oracle-grid, " +
                     "split, reorder, distsim, codec or routines");
  }
  return report;
}

nlohmann::json verify_report_json(const VerifyReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteResult& r : report.suites) {
    nlohmann::json j = {{"name", r.name},
                        {"cases", r.cases},
                        {"max_rel_error", r.max_rel_error},
                        {"passed", r.passed}};
    if (!r.counterexample_files.empty()) {
      j["counterexample_files"] = r.counterexample_files;
    }
    suites.push_back(std::move(j));
  }
  return {{"schema_version", kReportSchemaVersion},
          {"seed", report.seed},
          {"suites", suites},
          {"passed", report.passed}};
}

}  // namespace g4s
