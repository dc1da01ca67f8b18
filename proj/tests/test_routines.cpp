// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include <complex>
#include <vector>

#include <doctest.h>

#include "g4s/matrix.hpp"
#include "g4s/oracle.hpp"
#include "g4s/routines.hpp"
#include "g4s/synth.hpp"

namespace {

using g4s::Complex;
using g4s::Graph;

Graph<double> graph_of(std::uint64_t rows, std::uint64_t cols,
                       std::vector<g4s::Entry<double>> triples) {
  g4s::MatrixDescriptor d;
  d.rows = rows;
  d.cols = cols;
  return g4s::graph_from_triples(std::max(rows, cols), d, std::move(triples));
}

Graph<double> identity_graph(std::uint64_t n) {
  std::vector<g4s::Entry<double>> triples;
  for (std::uint64_t i = 0; i < n; ++i) triples.push_back({i, i, 1.0});
  return graph_of(n, n, std::move(triples));
}

g4s::CooMatrix<double> coo_of_graph(const Graph<double>& g) {
  return g4s::graph_to_matrix(g, g.origin.rows, g.origin.cols);
}

}  // namespace

TEST_CASE("mantle force equals the stiffness product from a zero start") {
  SUBCASE("identity stiffness returns the velocities") {
    auto u = g4s::random_vector<double>(6, 3);
    CHECK(g4s::mantle_force(identity_graph(6), u) == u);
  }
  SUBCASE("fixed stiffness") {
    Graph<double> k = graph_of(2, 2, {{0, 1, 2.0}, {1, 0, 3.0}});
    CHECK(g4s::mantle_force(k, {1.0, 4.0}) == std::vector<double>{8.0, 3.0});
  }
  SUBCASE("a prior force accumulates instead of being overwritten") {
    Graph<double> k = graph_of(2, 2, {{0, 1, 2.0}, {1, 0, 3.0}});
    CHECK(g4s::mantle_force(k, {1.0, 4.0}, {1.0, 1.0}) ==
          std::vector<double>{9.0, 4.0});
  }
  SUBCASE("random stiffness matches the oracle product plus the prior") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      std::uint64_t n = seed % 2 == 0 ? 33 : 128;
      auto m = g4s::synth_stiffness(n, seed);
      auto g = g4s::matrix_to_graph(m);
      auto u = g4s::random_vector<double>(n, seed + 50);
      auto f0 = g4s::random_vector<double>(n, seed + 90);
      auto want = g4s::oracle_mv(m, u);
      for (std::uint64_t i = 0; i < n; ++i) want[i] += f0[i];
      CHECK(g4s::max_rel_error(g4s::mantle_force(g, u, f0), want) <= 1e-10);
    }
  }
  SUBCASE("shape mismatches are rejected") {
    Graph<double> rect = graph_of(2, 3, {{0, 1, 1.0}});
    CHECK_THROWS_AS((void)g4s::mantle_force(rect, {1.0, 2.0, 3.0}), g4s::Error);
    Graph<double> k = graph_of(2, 2, {});
    CHECK_THROWS_AS((void)g4s::mantle_force(k, {1.0}), g4s::Error);
    CHECK_THROWS_AS((void)g4s::mantle_force(k, {1.0, 2.0}, {1.0}), g4s::Error);
  }
}

TEST_CASE("potential energy chains agree between sequential and composed paths") {
  SUBCASE("a single factor is a plain product") {
    Graph<double> a = graph_of(3, 3, {{0, 2, 2.0}, {1, 0, 1.0}, {2, 1, 5.0}});
    std::vector<double> v = {1.0, 2.0, 3.0};
    CHECK(g4s::potential_energy_chain({a}, v) == g4s::graph_mv(a, v));
  }
  SUBCASE("two factors match nested oracle products") {
    Graph<double> a = graph_of(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 1, 1.0}});
    Graph<double> b = graph_of(2, 2, {{0, 0, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
    std::vector<double> v = {1.0, 0.0};
    auto want = g4s::oracle_mv(coo_of_graph(a), g4s::oracle_mv(coo_of_graph(b), v));
    auto got = g4s::potential_energy_chain({a, b}, v);
    CHECK(g4s::max_rel_error(got, want) <= 1e-10);
    CHECK(got == std::vector<double>{3.0, 1.0});
  }
  SUBCASE("random chains of three factors stay within chain tolerance") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      std::vector<Graph<double>> chain;
      std::vector<g4s::CooMatrix<double>> factors;
      for (int i = 0; i < 3; ++i) {
        auto m = g4s::synth_chain_factor(8, seed * 10 + i);
        factors.push_back(m);
        chain.push_back(g4s::matrix_to_graph(m));
      }
      auto v = g4s::random_vector<double>(8, seed + 500);
      auto want = v;
      for (int i = 2; i >= 0; --i) want = g4s::oracle_mv(factors[i], want);

      auto sequential = g4s::potential_energy_chain(chain, v);
      auto composed = g4s::potential_energy_chain_composed(chain, v);
      CHECK(g4s::max_rel_error(sequential, want) <= 1e-9);
      CHECK(g4s::max_rel_error(composed, want) <= 1e-9);
      CHECK(g4s::max_rel_error(sequential, composed) <= 1e-9);
    }
  }
  SUBCASE("rectangular chains keep their shapes") {
    Graph<double> a = graph_of(4, 6, {{0, 5, 1.0}, {2, 0, 2.0}, {3, 3, 0.5}});
    Graph<double> b = graph_of(6, 3, {{5, 2, 4.0}, {0, 0, 1.0}, {3, 1, 2.0}});
    std::vector<double> v = {1.0, -1.0, 2.0};
    auto want = g4s::oracle_mv(coo_of_graph(a), g4s::oracle_mv(coo_of_graph(b), v));
    auto sequential = g4s::potential_energy_chain({a, b}, v);
    auto composed = g4s::potential_energy_chain_composed({a, b}, v);
    REQUIRE(sequential.size() == 4);
    CHECK(g4s::max_rel_error(sequential, want) <= 1e-10);
    CHECK(g4s::max_rel_error(composed, want) <= 1e-10);
  }
  SUBCASE("complex factors behave the same way") {
    std::vector<Graph<Complex>> chain;
    std::vector<g4s::CooMatrix<Complex>> factors;
    for (int i = 0; i < 3; ++i) {
      g4s::MatrixDescriptor d;
      d.rows = d.cols = 6;
      d.scalar = g4s::ScalarKind::Complex64x2;
      auto m = g4s::random_matrix<Complex>(d, 0.5, 77 + i);
      factors.push_back(m);
      chain.push_back(g4s::matrix_to_graph(m));
    }
    auto v = g4s::random_vector<Complex>(6, 600);
    auto want = v;
    for (int i = 2; i >= 0; --i) want = g4s::oracle_mv(factors[i], want);
    CHECK(g4s::max_rel_error(g4s::potential_energy_chain(chain, v), want) <= 1e-9);
    CHECK(g4s::max_rel_error(g4s::potential_energy_chain_composed(chain, v), want) <=
          1e-9);
  }
  SUBCASE("bad chains are rejected") {
    CHECK_THROWS_AS((void)g4s::potential_energy_chain(std::vector<Graph<double>>{},
                                                      std::vector<double>{}),
                    g4s::Error);
    Graph<double> a = graph_of(2, 3, {});
    Graph<double> b = graph_of(2, 2, {});
    CHECK_THROWS_AS((void)g4s::potential_energy_chain(
                        std::vector<Graph<double>>{a, b},
                        std::vector<double>{1.0, 2.0}),
                    g4s::Error);
    CHECK_THROWS_AS((void)g4s::potential_energy_chain(
                        std::vector<Graph<double>>{b},
                        std::vector<double>{1.0, 2.0, 3.0}),
                    g4s::Error);
  }
}

TEST_CASE("heat capacity aggregates neighbor pressures") {
  SUBCASE("identity coupling returns the pressures") {
    auto p = g4s::random_vector<double>(5, 9);
    CHECK(g4s::heat_capacity(identity_graph(5), p) == p);
  }
  SUBCASE("row sums of one preserve a constant pressure") {
    Graph<double> t = graph_of(3, 3, {{0, 0, 0.5}, {0, 2, 0.5},
                                      {1, 0, 0.25}, {1, 1, 0.25}, {1, 2, 0.5},
                                      {2, 1, 1.0}});
    std::vector<double> p = {3.5, 3.5, 3.5};
    auto out = g4s::heat_capacity(t, p);
    REQUIRE(out.size() == 3);
    for (double c : out) CHECK(c == doctest::Approx(3.5).epsilon(1e-12));
  }
  SUBCASE("zero coupling gives zero output") {
    Graph<double> t = graph_of(4, 4, {});
    CHECK(g4s::heat_capacity(t, {1.0, 2.0, 3.0, 4.0}) ==
          std::vector<double>(4, 0.0));
  }
  SUBCASE("synthetic couplings match the oracle and stay row stochastic") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto m = g4s::synth_coupling(16, seed);
      auto g = g4s::matrix_to_graph(m);
      auto p = g4s::random_vector<double>(16, seed + 40);
      CHECK(g4s::max_rel_error(g4s::heat_capacity(g, p), g4s::oracle_mv(m, p)) <=
            1e-10);
      std::vector<double> ones(16, 1.0);
      auto sums = g4s::heat_capacity(g, ones);
      for (double s : sums) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("pressure length must match") {
    CHECK_THROWS_AS((void)g4s::heat_capacity(identity_graph(3), {1.0}), g4s::Error);
  }
}

TEST_CASE("routine names round trip") {
  for (auto kind : {g4s::RoutineKind::MantleForce, g4s::RoutineKind::PotentialEnergy,
                    g4s::RoutineKind::HeatCapacity}) {
    CHECK(g4s::routine_from_name(g4s::routine_name(kind)) == kind);
  }
  CHECK_THROWS_AS((void)g4s::routine_from_name("thermo"), g4s::Error);
}

TEST_CASE("synthetic generators have the documented structure") {
  SUBCASE("stiffness stores a lower triangle with a dominant full diagonal") {
    auto m = g4s::synth_stiffness(24, 5);
    CHECK(m.rows() == 24);
    CHECK(m.desc().kind == g4s::MatrixKind::Symmetric);
    std::vector<double> diag(24, 0.0);
    std::vector<double> off_abs(24, 0.0);
    for (const auto& e : m.entries()) {
      CHECK(e.row >= e.col);
      if (e.row == e.col) {
        diag[e.row] = e.value;
      } else {
        off_abs[e.row] += std::abs(e.value);
        off_abs[e.col] += std::abs(e.value);
      }
    }
    for (std::uint64_t i = 0; i < 24; ++i) CHECK(diag[i] > off_abs[i]);
  }
  SUBCASE("chain factors are dense and bounded") {
    auto m = g4s::synth_chain_factor(8, 3);
    CHECK(m.nnz() == 64);
    for (const auto& e : m.entries()) CHECK(std::abs(e.value) <= 1.0);
  }
  SUBCASE("generators are deterministic in the seed") {
    CHECK(g4s::synth_coupling(12, 9).entries().size() ==
          g4s::synth_coupling(12, 9).entries().size());
    auto a = g4s::synth_stiffness(12, 9);
    auto b = g4s::synth_stiffness(12, 9);
    REQUIRE(a.nnz() == b.nnz());
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
      CHECK(a.entries()[k].value == b.entries()[k].value);
    }
  }
}
