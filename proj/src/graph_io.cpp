// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/graph_io.hpp"

#include <fstream>
#include <limits>

#include "g4s/error.hpp"
#include "g4s/util.hpp"

namespace g4s {
namespace {

constexpr char kMagic[4] = {'G', '4', 'S', '1'};

template <typename T>
std::vector<std::uint8_t> serialize_impl(const Graph<T>& g) {
  std::vector<std::uint8_t> out;
  std::size_t value_bytes = is_complex_v<T> ? 16 : 8;
  out.reserve(29 + 8 * (g.vertex_count + 1) + g.edge_count() * (8 + value_bytes));
  for (char c : kMagic) out.push_back(static_cast<std::uint8_t>(c));
  put_u64(out, g.vertex_count);
  put_u64(out, g.edge_count());
  put_u8(out, static_cast<std::uint8_t>(scalar_kind_of<T>()));
  if (g.origin.rows > std::numeric_limits<std::uint32_t>::max() ||
      g.origin.cols > std::numeric_limits<std::uint32_t>::max()) {
    throw_validation("origin shape exceeds the binary format's 32-bit range");
  }
  put_u32(out, static_cast<std::uint32_t>(g.origin.rows));
  put_u32(out, static_cast<std::uint32_t>(g.origin.cols));
  for (std::uint64_t o : g.offsets) put_u64(out, o);
  for (std::uint64_t s : g.sources) put_u64(out, s);
  for (const T& w : g.weights) {
    if constexpr (is_complex_v<T>) {
      put_f64(out, w.real());
      put_f64(out, w.imag());
    } else {
      put_f64(out, w);
    }
  }
  return out;
}

template <typename T>
Graph<T> deserialize_body(ByteReader& r, std::uint64_t vertices, std::uint64_t edges,
                          std::uint32_t rows, std::uint32_t cols) {
  Graph<T> g;
  g.vertex_count = vertices;
  g.origin.rows = rows;
  g.origin.cols = cols;
  g.origin.kind = MatrixKind::General;
  g.origin.scalar = scalar_kind_of<T>();

  std::size_t value_bytes = is_complex_v<T> ? 16 : 8;
  std::size_t remaining = r.size - r.pos;
  if (vertices >= remaining / 8 || edges > remaining / (8 + value_bytes)) {
    throw_parse("graph file truncated");
  }
  std::size_t need = 8 * (vertices + 1) + edges * (8 + value_bytes);
  if (!r.has(need)) throw_parse("graph file truncated");

  g.offsets.resize(vertices + 1);
  for (auto& o : g.offsets) o = r.u64();
  if (g.offsets[0] != 0 || g.offsets[vertices] != edges) {
    throw_parse("graph file has inconsistent offsets");
  }
  for (std::uint64_t v = 0; v < vertices; ++v) {
    if (g.offsets[v] > g.offsets[v + 1]) {
      throw_parse("graph file has non monotone offsets");
    }
  }
  g.sources.resize(edges);
  for (auto& s : g.sources) {
    s = r.u64();
    if (s >= vertices) throw_parse("graph file references a source outside the vertex range");
  }
  for (std::uint64_t v = 0; v < vertices; ++v) {
    for (std::uint64_t k = g.offsets[v] + 1; k < g.offsets[v + 1]; ++k) {
      if (g.sources[k - 1] >= g.sources[k]) {
        throw_parse("graph file sources are not strictly ascending per destination");
      }
    }
  }
  g.weights.resize(edges);
  for (auto& w : g.weights) {
    if constexpr (is_complex_v<T>) {
      double re = r.f64();
      double im = r.f64();
      w = Complex(re, im);
    } else {
      w = r.f64();
    }
  }
  return g;
}

}  // namespace

std::vector<std::uint8_t> serialize_graph(const Graph<double>& g) {
  return serialize_impl(g);
}

std::vector<std::uint8_t> serialize_graph(const Graph<Complex>& g) {
  return serialize_impl(g);
}

std::vector<std::uint8_t> serialize_graph(const ParsedGraph& g) {
  return std::visit([](const auto& v) { return serialize_impl(v); }, g);
}

ParsedGraph deserialize_graph(const std::vector<std::uint8_t>& bytes) {
  ByteReader r{bytes.data(), bytes.size(), 0};
  if (!r.has(29)) throw_parse("graph file truncated");
  for (char c : kMagic) {
    if (r.u8() != static_cast<std::uint8_t>(c)) {
      throw_parse("not a graph file (bad magic)");
    }
  }
  std::uint64_t vertices = r.u64();
  std::uint64_t edges = r.u64();
  std::uint8_t scalar = r.u8();
  std::uint32_t rows = r.u32();
  std::uint32_t cols = r.u32();
  if (vertices == 0) throw_parse("graph file declares zero vertices");
  if (std::max<std::uint64_t>(rows, cols) != vertices) {
    throw_parse("graph file origin shape does not match the vertex count");
  }
  ParsedGraph out;
  if (scalar == static_cast<std::uint8_t>(ScalarKind::Real64)) {
    out = deserialize_body<double>(r, vertices, edges, rows, cols);
  } else if (scalar == static_cast<std::uint8_t>(ScalarKind::Complex64x2)) {
    out = deserialize_body<Complex>(r, vertices, edges, rows, cols);
  } else {
    throw_parse("graph file has an unknown scalar kind");
  }
  if (r.pos != r.size) throw_parse("graph file has trailing bytes");
  return out;
}

void write_graph_file(const std::string& path, const ParsedGraph& g) {
  std::vector<std::uint8_t> bytes = serialize_graph(g);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_parse("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw_parse("failed writing '" + path + "'");
}

ParsedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_parse("cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_graph(bytes);
}

}  // namespace g4s
