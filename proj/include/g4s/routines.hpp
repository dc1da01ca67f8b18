// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scientific-routine kernels phrased as single Gather/Apply passes: a
// boundary-force accumulation, a chained product of interaction factors, and
// a neighbor-coupling aggregation.  Each pass binds exactly one program.
#pragma once

#include <string>
#include <vector>

#include "g4s/engine.hpp"
#include "g4s/error.hpp"
#include "g4s/graph.hpp"

namespace g4s {

enum class RoutineKind { MantleForce, PotentialEnergy, HeatCapacity };

inline const char* routine_name(RoutineKind kind) {
  switch (kind) {
    case RoutineKind::MantleForce: return "mantle-force";
    case RoutineKind::PotentialEnergy: return "potential-energy";
    case RoutineKind::HeatCapacity: return "heat-capacity";
  }
  return "unknown";
}

inline RoutineKind routine_from_name(const std::string& name) {
  if (name == "mantle-force") return RoutineKind::MantleForce;
  if (name == "potential-energy") return RoutineKind::PotentialEnergy;
  if (name == "heat-capacity") return RoutineKind::HeatCapacity;
  throw_validation("unknown routine: " + name);
}

// Per-vertex state for the force pass: the velocity is read by neighbors,
// the force accumulates across calls.
template <typename T>
struct MantleState {
  T u{};
  T f{};
};

// gather multiplies the source velocity by the edge weight; apply adds the
// combined contribution onto the existing force instead of overwriting it.
template <typename T>
struct MantleForceProgram {
  using Message = T;
  Message gather(const MantleState<T>& s, const T& w) const { return s.u * w; }
  Message combine(const Message& a, const Message& b) const { return a + b; }
  Message identity() const { return Message{}; }
  MantleState<T> apply(const Message& m, const MantleState<T>& old) const {
    return {old.u, old.f + m};
  }
};

// One accumulating pass of f += K u.  An empty f0 means starting from zero,
// in which case the result is exactly the matrix-vector product.
template <typename T>
std::vector<T> mantle_force(const Graph<T>& g_k, const std::vector<T>& u,
                            const std::vector<T>& f0 = {},
                            const ExecutionStrategy& strat = {}, int workers = 0) {
  if (g_k.origin.rows != g_k.origin.cols) {
    throw_validation("stiffness matrix must be square");
  }
  std::uint64_t n = g_k.origin.rows;
  if (u.size() != n) {
    throw_validation("velocity length " + std::to_string(u.size()) +
                     " does not match matrix order " + std::to_string(n));
  }
  if (!f0.empty() && f0.size() != n) {
    throw_validation("initial force length " + std::to_string(f0.size()) +
                     " does not match matrix order " + std::to_string(n));
  }
  VertexStateVector<MantleState<T>> states(g_k.vertex_count);
  for (std::uint64_t i = 0; i < n; ++i) {
    states[i].u = u[i];
    if (!f0.empty()) states[i].f = f0[i];
  }
  auto out = run_gather_apply(g_k, states, MantleForceProgram<T>{}, strat, workers);
  std::vector<T> f(n);
  for (std::uint64_t i = 0; i < n; ++i) f[i] = out[i].f;
  return f;
}

template <typename T>
void validate_chain(const std::vector<Graph<T>>& graphs, const std::vector<T>& v) {
  if (graphs.empty()) throw_validation("interaction chain must not be empty");
  for (std::size_t i = 0; i + 1 < graphs.size(); ++i) {
    if (graphs[i].origin.cols != graphs[i + 1].origin.rows) {
      throw_validation("chain factors " + std::to_string(i) + " and " +
                       std::to_string(i + 1) + " have incompatible shapes");
    }
  }
  if (v.size() != graphs.back().origin.cols) {
    throw_validation("position vector length " + std::to_string(v.size()) +
                     " does not match the last factor's columns");
  }
}

// G1 * G2 * ... * Gk * v as right-to-left matrix-vector passes.
template <typename T>
std::vector<T> potential_energy_chain(const std::vector<Graph<T>>& graphs,
                                      const std::vector<T>& v,
                                      const ExecutionStrategy& strat = {},
                                      int workers = 0) {
  validate_chain(graphs, v);
  std::vector<T> x = v;
  for (std::size_t i = graphs.size(); i-- > 0;) {
    x = graph_mv(graphs[i], x, strat, workers);
  }
  return x;
}

// The same product with the chain collapsed first: a left fold of graph
// composition, then a single pass.  Agrees with the sequential path within
// chain tolerance; used to check that collapsing direct dependencies is an
// equivalence.
template <typename T>
std::vector<T> potential_energy_chain_composed(const std::vector<Graph<T>>& graphs,
                                               const std::vector<T>& v,
                                               const ExecutionStrategy& strat = {},
                                               int workers = 0) {
  validate_chain(graphs, v);
  Graph<T> acc = graphs.front();
  for (std::size_t i = 1; i < graphs.size(); ++i) {
    acc = compose_graphs(acc, graphs[i], workers);
  }
  return graph_mv(acc, v, strat, workers);
}

// gather multiplies the neighbor's pressure by the coupling weight; apply
// overwrites with the aggregate.
template <typename T>
struct HeatCapacityProgram {
  using Message = T;
  Message gather(const T& pressure, const T& w) const { return pressure * w; }
  Message combine(const Message& a, const Message& b) const { return a + b; }
  Message identity() const { return Message{}; }
  T apply(const Message& m, const T&) const { return m; }
};

template <typename T>
std::vector<T> heat_capacity(const Graph<T>& g_t, const std::vector<T>& p,
                             const ExecutionStrategy& strat = {}, int workers = 0) {
  if (p.size() != g_t.origin.cols) {
    throw_validation("pressure length " + std::to_string(p.size()) +
                     " does not match matrix columns " +
                     std::to_string(g_t.origin.cols));
  }
  VertexStateVector<T> states(g_t.vertex_count, T{});
  std::copy(p.begin(), p.end(), states.begin());
  auto out = run_gather_apply(g_t, states, HeatCapacityProgram<T>{}, strat, workers);
  return std::vector<T>(out.begin(), out.begin() + g_t.origin.rows);
}

}  // namespace g4s
