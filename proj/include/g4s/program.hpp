// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>
#include <functional>
#include <vector>

#include "g4s/scalar.hpp"
#include "g4s/util.hpp"

namespace g4s {

// One state per vertex.  S is a scalar for the matrix operations; routines
// may carry a small struct (see MantleState).
template <typename S>
using VertexStateVector = std::vector<S>;

// The whole programming surface is two interfaces plus the combiner that
// folds gathered messages:
//   gather(neighbor_state, edge_weight) -> message
//   combine(message, message) -> message   (associative, commutative,
//                                           with a declared identity)
//   apply(combined_message, old_state) -> new_state
// A vertex with no in-edges receives apply(identity(), old_state).
template <typename P, typename S, typename T>
concept GatherApplyProgramFor =
    requires(const P p, const S s, const T w, const typename P::Message m) {
      typename P::Message;
      { p.gather(s, w) } -> std::convertible_to<typename P::Message>;
      { p.combine(m, m) } -> std::convertible_to<typename P::Message>;
      { p.identity() } -> std::convertible_to<typename P::Message>;
      { p.apply(m, s) } -> std::convertible_to<S>;
    };

// The sum program behind MV and friends: gather multiplies the neighbor
// state by the edge weight, combine adds, apply overwrites.
template <typename T>
struct MvProgram {
  using Message = T;
  T gather(const T& state, const T& weight) const { return state * weight; }
  T combine(const T& a, const T& b) const { return a + b; }
  T identity() const { return T{}; }
  T apply(const T& msg, const T&) const { return msg; }
};

// Type-erased program over scalar states, for callers that assemble
// behavior at runtime (bindings, experiments).  The declared identity must
// satisfy combine(identity, x) == x.
template <typename T>
struct GatherApplyProgram {
  using Message = T;
  std::function<T(const T&, const T&)> gather_fn;
  std::function<T(const T&, const T&)> combine_fn;
  std::function<T(const T&, const T&)> apply_fn;
  T identity_value{};

  T gather(const T& state, const T& weight) const { return gather_fn(state, weight); }
  T combine(const T& a, const T& b) const { return combine_fn(a, b); }
  T identity() const { return identity_value; }
  T apply(const T& msg, const T& old_state) const { return apply_fn(msg, old_state); }
};

template <typename T>
GatherApplyProgram<T> make_mv_program() {
  GatherApplyProgram<T> p;
  p.gather_fn = [](const T& s, const T& w) { return s * w; };
  p.combine_fn = [](const T& a, const T& b) { return a + b; };
  p.apply_fn = [](const T& msg, const T&) { return msg; };
  p.identity_value = T{};
  return p;
}

// Spot-checks the declared combiner contract (identity, commutativity,
// associativity) on random samples.  Returns the worst violation seen.
template <typename T, typename P>
double check_combiner_contract(const P& prog, std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    T a = rng.next_scalar<T>(-1.0, 1.0);
    T b = rng.next_scalar<T>(-1.0, 1.0);
    T c = rng.next_scalar<T>(-1.0, 1.0);
    worst = std::max(worst, abs_value(prog.combine(prog.identity(), a) - a));
    worst = std::max(worst, abs_value(prog.combine(a, b) - prog.combine(b, a)));
    worst = std::max(worst, abs_value(prog.combine(prog.combine(a, b), c) -
                                      prog.combine(a, prog.combine(b, c))));
  }
  return worst;
}

}  // namespace g4s
