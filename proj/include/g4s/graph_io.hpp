// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "g4s/graph.hpp"

namespace g4s {

using ParsedGraph = std::variant<Graph<double>, Graph<Complex>>;

// Binary graph container.  Little endian throughout:
//   magic "G4S1"
//   u64 vertex_count, u64 edge_count
//   u8 scalar kind (0 real, 1 complex)
//   u32 origin rows, u32 origin cols
//   offsets (vertex_count + 1 u64), sources (edge_count u64),
//   weights (edge_count f64, or re/im f64 pairs when complex)
// The origin kind is not stored; graphs read back as General over the
// recorded shape.
std::vector<std::uint8_t> serialize_graph(const Graph<double>& g);
std::vector<std::uint8_t> serialize_graph(const Graph<Complex>& g);
std::vector<std::uint8_t> serialize_graph(const ParsedGraph& g);

ParsedGraph deserialize_graph(const std::vector<std::uint8_t>& bytes);

void write_graph_file(const std::string& path, const ParsedGraph& g);
ParsedGraph read_graph_file(const std::string& path);

}  // namespace g4s
