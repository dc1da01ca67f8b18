// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
//
// In-process BSP simulation of sharded execution.  "Machines" are shards of
// the vertex ID space owning disjoint state; the only inter-shard channel is
// explicit byte-encoded message batches delivered at superstep boundaries.
// Shards execute sequentially in shard order, so results are identical for
// every worker count by construction.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "g4s/engine.hpp"
#include "g4s/graph.hpp"
#include "g4s/program.hpp"
#include "g4s/util.hpp"

namespace g4s {

// ---------------------------------------------------------------------------
// Partitioning

struct PartitionAssignment {
  std::uint64_t vertex_count = 0;
  std::uint64_t shard_count = 0;
  // Per shard: list of contiguous [begin, end) ID ranges.  One range each
  // at construction; migration can append a moved boundary slice.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> segments;
  std::vector<std::uint64_t> owner;  // vertex -> shard

  std::uint64_t shard_of(std::uint64_t v) const { return owner[v]; }

  std::uint64_t shard_size(std::uint64_t s) const {
    std::uint64_t total = 0;
    for (auto [b, e] : segments[s]) total += e - b;
    return total;
  }

  void rebuild_owner() {
    owner.assign(vertex_count, 0);
    for (std::uint64_t s = 0; s < shard_count; ++s) {
      for (auto [b, e] : segments[s]) {
        for (std::uint64_t v = b; v < e; ++v) owner[v] = s;
      }
    }
  }
};

inline PartitionAssignment partition_vertices(std::uint64_t m, std::uint64_t p) {
  if (p == 0) throw_validation("shard count must be at least 1");
  if (p > m) {
    throw_validation("shard count " + std::to_string(p) +
                     " exceeds vertex count " + std::to_string(m));
  }
  PartitionAssignment asg;
  asg.vertex_count = m;
  asg.shard_count = p;
  asg.segments.resize(p);
  // First (m mod p) shards take the larger share.
  std::uint64_t base = m / p;
  std::uint64_t extra = m % p;
  std::uint64_t at = 0;
  for (std::uint64_t s = 0; s < p; ++s) {
    std::uint64_t size = base + (s < extra ? 1 : 0);
    asg.segments[s].emplace_back(at, at + size);
    at += size;
  }
  asg.rebuild_owner();
  return asg;
}

template <typename T>
PartitionAssignment partition_graph(const Graph<T>& g, std::uint64_t p) {
  return partition_vertices(g.vertex_count, p);
}

// ---------------------------------------------------------------------------
// Hub replication

struct ReplicationPlan {
  std::uint64_t threshold = kDefaultSplitLimit;
  std::vector<std::uint64_t> hubs;  // ascending vertex IDs mirrored everywhere

  bool empty() const { return hubs.empty(); }
  bool replicated(std::uint64_t v) const {
    return std::binary_search(hubs.begin(), hubs.end(), v);
  }
};

template <typename T>
ReplicationPlan replicate_hubs(const Graph<T>& g, const PartitionAssignment& asg,
                               std::uint64_t threshold = kDefaultSplitLimit) {
  if (threshold < 1) throw_validation("replication threshold must be at least 1");
  (void)asg;  // every shard receives every mirror, so the layout is irrelevant
  ReplicationPlan plan;
  plan.threshold = threshold;
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    if (g.in_degree(v) > threshold) plan.hubs.push_back(v);
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Message batches and the ID codec

enum class EncodeMode : std::uint8_t { Raw = 0, Delta = 1 };

inline const char* encode_mode_name(EncodeMode m) {
  return m == EncodeMode::Raw ? "raw" : "delta";
}

template <typename T>
struct MessageBatch {
  std::uint64_t src_shard = 0;
  std::uint64_t dst_shard = 0;
  std::uint64_t superstep = 0;
  // (destination key, combined message), ascending keys; with merging off a
  // key may repeat, preserving canonical fold order.
  std::vector<std::pair<std::uint64_t, T>> entries;
  EncodeMode encoding = EncodeMode::Raw;
};

namespace detail {

inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint64_t get_varint(ByteReader& r) {
  std::uint64_t v = 0;
  int shift = 0;
  while (true) {
    if (!r.has(1)) throw_parse("corrupt batch: truncated varint");
    std::uint8_t byte = r.u8();
    if (shift >= 63 && (byte & 0x7f) > 1) {
      throw_parse("corrupt batch: varint overflows 64 bits");
    }
    v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) return v;
    shift += 7;
    if (shift > 63) throw_parse("corrupt batch: varint too long");
  }
}

template <typename T>
void put_value(std::vector<std::uint8_t>& out, const T& v) {
  if constexpr (is_complex_v<T>) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  } else {
    put_f64(out, v);
  }
}

template <typename T>
T get_value(ByteReader& r) {
  if constexpr (is_complex_v<T>) {
    double re = r.f64();
    double im = r.f64();
    return T(re, im);
  } else {
    return r.f64();
  }
}

template <typename T>
constexpr std::uint64_t value_bytes() {
  return is_complex_v<T> ? 16 : 8;
}

}  // namespace detail

// Byte stream plus the portion spent on destination IDs, which is what the
// delta layout compresses (values are shipped verbatim in both modes).
struct EncodedBatch {
  std::vector<std::uint8_t> bytes;
  std::uint64_t id_bytes = 0;
};

// Layout: u8 mode, u64 entry count, then
//   raw:   (u64 ID, value) pairs
//   delta: u64 first ID, varint deltas between consecutive IDs, then all
//          values in entry order
template <typename T>
EncodedBatch encode_batch(const MessageBatch<T>& b, EncodeMode mode) {
  EncodedBatch out;
  put_u8(out.bytes, static_cast<std::uint8_t>(mode));
  put_u64(out.bytes, b.entries.size());
  if (mode == EncodeMode::Raw) {
    for (const auto& [id, value] : b.entries) {
      put_u64(out.bytes, id);
      detail::put_value(out.bytes, value);
    }
    out.id_bytes = 8 * b.entries.size();
    return out;
  }
  if (!b.entries.empty()) {
    std::size_t id_start = out.bytes.size();
    put_u64(out.bytes, b.entries.front().first);
    std::uint64_t prev = b.entries.front().first;
    for (std::size_t k = 1; k < b.entries.size(); ++k) {
      std::uint64_t id = b.entries[k].first;
      if (id < prev) {
        throw_validation("delta encoding requires ascending destination IDs");
      }
      detail::put_varint(out.bytes, id - prev);
      prev = id;
    }
    out.id_bytes = out.bytes.size() - id_start;
    for (const auto& [id, value] : b.entries) {
      detail::put_value(out.bytes, value);
    }
  }
  return out;
}

template <typename T>
MessageBatch<T> decode_batch(const std::vector<std::uint8_t>& bytes) {
  ByteReader r{bytes.data(), bytes.size(), 0};
  if (!r.has(9)) throw_parse("corrupt batch: missing header");
  std::uint8_t mode_byte = r.u8();
  if (mode_byte > 1) throw_parse("corrupt batch: unknown encoding mode");
  EncodeMode mode = static_cast<EncodeMode>(mode_byte);
  std::uint64_t count = r.u64();
  constexpr std::uint64_t vb = detail::value_bytes<T>();

  MessageBatch<T> batch;
  batch.encoding = mode;
  if (count > (bytes.size() / (mode == EncodeMode::Raw ? 8 + vb : vb)) + 1) {
    throw_parse("corrupt batch: entry count exceeds stream size");
  }
  batch.entries.reserve(count);
  if (mode == EncodeMode::Raw) {
    for (std::uint64_t k = 0; k < count; ++k) {
      if (!r.has(8 + vb)) throw_parse("corrupt batch: truncated entries");
      std::uint64_t id = r.u64();
      batch.entries.emplace_back(id, detail::get_value<T>(r));
    }
  } else if (count > 0) {
    if (!r.has(8)) throw_parse("corrupt batch: missing first ID");
    std::uint64_t id = r.u64();
    std::vector<std::uint64_t> ids{id};
    for (std::uint64_t k = 1; k < count; ++k) {
      std::uint64_t delta = detail::get_varint(r);
      if (id > UINT64_MAX - delta) throw_parse("corrupt batch: ID overflow");
      id += delta;
      ids.push_back(id);
    }
    if (!r.has(count * vb)) throw_parse("corrupt batch: truncated values");
    for (std::uint64_t k = 0; k < count; ++k) {
      batch.entries.emplace_back(ids[k], detail::get_value<T>(r));
    }
  }
  if (r.pos != bytes.size()) throw_parse("corrupt batch: trailing bytes");
  return batch;
}

// Groups raw (destination, message) pairs by destination, folding each group
// in its original order; output ascending by destination.
template <typename T, typename Combine>
std::vector<std::pair<std::uint64_t, T>> merge_messages(
    std::vector<std::pair<std::uint64_t, T>> raw, Combine&& combine) {
  std::stable_sort(raw.begin(), raw.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::uint64_t, T>> out;
  for (std::size_t k = 0; k < raw.size();) {
    std::uint64_t dst = raw[k].first;
    T acc = raw[k].second;
    ++k;
    while (k < raw.size() && raw[k].first == dst) {
      acc = combine(acc, raw[k].second);
      ++k;
    }
    out.emplace_back(dst, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

struct MigrationEvent {
  std::uint64_t superstep = 0;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t vertices = 0;
  std::uint64_t bytes = 0;
  double predicted_seconds_saved = 0.0;
};

struct SuperstepMetrics {
  std::uint64_t pre_merge = 0;
  std::uint64_t post_merge = 0;
  std::uint64_t batches = 0;
  std::uint64_t raw_bytes = 0;
  std::uint64_t encoded_bytes = 0;
  std::vector<double> shard_loads;
  std::vector<MigrationEvent> migrations;
};

struct CommMetrics {
  std::vector<SuperstepMetrics> supersteps;

  std::uint64_t total_batches() const {
    std::uint64_t n = 0;
    for (const auto& s : supersteps) n += s.batches;
    return n;
  }
  std::uint64_t total_pre_merge() const {
    std::uint64_t n = 0;
    for (const auto& s : supersteps) n += s.pre_merge;
    return n;
  }
  std::uint64_t total_post_merge() const {
    std::uint64_t n = 0;
    for (const auto& s : supersteps) n += s.post_merge;
    return n;
  }
};

// ---------------------------------------------------------------------------
// Migration policy

struct CostModel {
  std::uint64_t candidate_bytes = 0;
  double bandwidth_bytes_per_second = 1024.0 * 1024.0 * 1024.0;  // 1 GiB/s
};

struct MigrationDecision {
  bool migrate = false;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  double predicted_seconds_saved = 0.0;
};

// Moves work only when the load gap exceeds the simulated transfer time.
inline MigrationDecision maybe_migrate(const std::vector<double>& loads,
                                       const CostModel& cost) {
  MigrationDecision d;
  if (loads.size() < 2) return d;
  std::size_t hi = 0, lo = 0;
  double sum = 0.0;
  for (std::size_t s = 0; s < loads.size(); ++s) {
    sum += loads[s];
    if (loads[s] > loads[hi]) hi = s;
    if (loads[s] < loads[lo]) lo = s;
  }
  double mean = sum / static_cast<double>(loads.size());
  double gap = loads[hi] - mean;
  double transfer = static_cast<double>(cost.candidate_bytes) /
                    cost.bandwidth_bytes_per_second;
  if (gap > transfer && hi != lo) {
    d.migrate = true;
    d.from = hi;
    d.to = lo;
    d.predicted_seconds_saved = gap - transfer;
  }
  return d;
}

// ---------------------------------------------------------------------------
// The BSP runner

struct DistPolicies {
  bool merge = true;
  bool replicate_hubs = false;
  EncodeMode encode = EncodeMode::Raw;
  bool migrate = false;
  std::uint64_t replicate_threshold = kDefaultSplitLimit;
  double bandwidth_bytes_per_second = 1024.0 * 1024.0 * 1024.0;
  double seconds_per_edge = 1e-8;  // simulated compute-time estimate
};

template <typename T>
class DistributedRunner {
public:
  DistributedRunner(Graph<T> g, std::uint64_t p, DistPolicies pol = {})
      : g_(std::move(g)), asg_(partition_vertices(g_.vertex_count, p)), pol_(pol) {
    if (pol_.replicate_hubs) {
      repl_ = replicate_hubs(g_, asg_, pol_.replicate_threshold);
    }
    build_out_index();
  }

  // One synchronous superstep: local gather, batch exchange, merge into the
  // partial folds, apply.  Equivalent to run_gather_apply on the whole graph.
  template <typename S, typename P>
    requires GatherApplyProgramFor<P, S, T>
  VertexStateVector<S> run_pass(const VertexStateVector<S>& states, const P& prog) {
    using M = typename P::Message;
    static_assert(std::is_same_v<M, T>,
                  "distributed passes ship messages through the scalar codec");
    if (states.size() != g_.vertex_count) {
      throw_validation("state vector length does not match vertex count");
    }
    std::uint64_t step = metrics_.supersteps.size();
    SuperstepMetrics sm;
    sm.shard_loads.assign(asg_.shard_count, 0.0);

    // Gather: per destination, fold the locally readable contributions
    // (same-shard sources plus replicated-hub mirrors) in ascending source
    // order.  Contributions of remote sources travel as messages.
    std::vector<M> folds(g_.vertex_count, prog.identity());
    for (std::uint64_t v = 0; v < g_.vertex_count; ++v) {
      std::uint64_t home = asg_.shard_of(v);
      auto src = g_.in_sources(v);
      auto w = g_.in_weights(v);
      M acc = prog.identity();
      for (std::size_t k = 0; k < src.size(); ++k) {
        if (asg_.shard_of(src[k]) == home || repl_.replicated(src[k])) {
          acc = prog.combine(acc, prog.gather(states[src[k]], w[k]));
        }
      }
      folds[v] = acc;
      sm.shard_loads[home] +=
          static_cast<double>(src.size()) * pol_.seconds_per_edge;
    }

    // Source-side message production, batched per (src shard, dst shard),
    // then encode, deliver, decode, and fold in ascending source-shard order.
    for (std::uint64_t dst_shard = 0; dst_shard < asg_.shard_count; ++dst_shard) {
      for (std::uint64_t src_shard = 0; src_shard < asg_.shard_count; ++src_shard) {
        if (src_shard == dst_shard) continue;
        std::vector<std::pair<std::uint64_t, T>> contributions;
        for (const OutEdge& e : out_index_[src_shard]) {
          if (asg_.shard_of(e.dst) != dst_shard) continue;
          if (repl_.replicated(e.src)) continue;  // read from the mirror instead
          contributions.emplace_back(e.dst, prog.gather(states[e.src], e.weight));
        }
        if (contributions.empty()) continue;
        sm.pre_merge += contributions.size();

        MessageBatch<T> batch;
        batch.src_shard = src_shard;
        batch.dst_shard = dst_shard;
        batch.superstep = step;
        batch.encoding = pol_.encode;
        if (pol_.merge) {
          batch.entries = merge_messages(std::move(contributions),
                                         [&](const T& a, const T& b) {
                                           return prog.combine(a, b);
                                         });
        } else {
          // Already sorted by (destination, source): canonical fold order.
          batch.entries = std::move(contributions);
        }
        sm.post_merge += batch.entries.size();

        EncodedBatch encoded = encode_batch(batch, pol_.encode);
        sm.raw_bytes += encode_batch(batch, EncodeMode::Raw).bytes.size();
        sm.encoded_bytes += encoded.bytes.size();
        sm.batches += 1;

        // Fold each destination's run before touching the partial, exactly
        // as sender-side merging would have: the merge policy then changes
        // bytes on the wire, never arithmetic.
        MessageBatch<T> delivered = decode_batch<T>(encoded.bytes);
        const auto& es = delivered.entries;
        for (std::size_t k = 0; k < es.size();) {
          std::uint64_t key = es[k].first;
          M acc = es[k].second;
          ++k;
          while (k < es.size() && es[k].first == key) {
            acc = prog.combine(acc, es[k].second);
            ++k;
          }
          folds[key] = prog.combine(folds[key], acc);
        }
      }
    }

    // Apply phase, shard by shard.
    VertexStateVector<S> out(g_.vertex_count);
    for (std::uint64_t v = 0; v < g_.vertex_count; ++v) {
      out[v] = prog.apply(folds[v], states[v]);
    }

    std::vector<double> loads = sm.shard_loads;
    metrics_.supersteps.push_back(std::move(sm));
    if (pol_.migrate) apply_migration(loads, step);
    return out;
  }

  const CommMetrics& metrics() const { return metrics_; }
  const PartitionAssignment& assignment() const { return asg_; }
  const ReplicationPlan& replication() const { return repl_; }
  const Graph<T>& graph() const { return g_; }

private:
  struct OutEdge {
    std::uint64_t src = 0;
    std::uint64_t dst = 0;
    T weight{};
  };

  void build_out_index() {
    out_index_.assign(asg_.shard_count, {});
    // Edge lists stay sorted by (destination, source): enumerating a
    // destination's remote contributions in source order needs no re-sort.
    for (std::uint64_t v = 0; v < g_.vertex_count; ++v) {
      auto src = g_.in_sources(v);
      auto w = g_.in_weights(v);
      for (std::size_t k = 0; k < src.size(); ++k) {
        std::uint64_t s = asg_.shard_of(src[k]);
        if (s != asg_.shard_of(v)) {
          out_index_[s].push_back({src[k], v, w[k]});
        }
      }
    }
  }

  void apply_migration(const std::vector<double>& loads, std::uint64_t step) {
    if (asg_.shard_count < 2) return;
    std::size_t hi = 0;
    double sum = 0.0;
    for (std::size_t s = 0; s < loads.size(); ++s) {
      sum += loads[s];
      if (loads[s] > loads[hi]) hi = s;
    }
    double mean = sum / static_cast<double>(loads.size());
    if (asg_.shard_size(hi) < 2) return;

    // Candidate: trailing boundary slice of the most-loaded shard's last
    // segment, sized by its share of the overload.
    double share = loads[hi] <= 0.0 ? 0.0 : (loads[hi] - mean) / loads[hi];
    std::uint64_t donor_size = asg_.shard_size(hi);
    std::uint64_t want =
        static_cast<std::uint64_t>(static_cast<double>(donor_size) * share);
    auto& last = asg_.segments[hi].back();
    std::uint64_t seg_size = last.second - last.first;
    std::uint64_t slice = std::min({want, seg_size - (asg_.segments[hi].size() == 1 ? 1 : 0),
                                    donor_size - 1});
    if (slice == 0) return;

    std::uint64_t begin = last.second - slice;
    std::uint64_t edges = 0;
    for (std::uint64_t v = begin; v < last.second; ++v) edges += g_.in_degree(v);
    std::uint64_t bytes =
        slice * 8 + edges * (8 + detail::value_bytes<T>());

    CostModel cost;
    cost.candidate_bytes = bytes;
    cost.bandwidth_bytes_per_second = pol_.bandwidth_bytes_per_second;
    MigrationDecision d = maybe_migrate(loads, cost);
    if (!d.migrate || d.from != hi) return;

    std::uint64_t end = last.second;
    last.second = begin;
    if (last.second == last.first) asg_.segments[hi].pop_back();
    asg_.segments[d.to].emplace_back(begin, end);
    asg_.rebuild_owner();
    build_out_index();
    metrics_.supersteps[step].migrations.push_back(
        {step, d.from, d.to, slice, bytes, d.predicted_seconds_saved});
  }

  Graph<T> g_;
  PartitionAssignment asg_;
  ReplicationPlan repl_;
  DistPolicies pol_;
  CommMetrics metrics_;
  std::vector<std::vector<OutEdge>> out_index_;
};

// ---------------------------------------------------------------------------
// Distributed realizations of the engine operations

template <typename S, typename T, typename P>
  requires GatherApplyProgramFor<P, S, T>
std::pair<VertexStateVector<S>, CommMetrics> run_distributed(
    const Graph<T>& g, const VertexStateVector<S>& states, const P& prog,
    std::uint64_t p, DistPolicies pol = {}) {
  DistributedRunner<T> runner(g, p, pol);
  VertexStateVector<S> out = runner.run_pass(states, prog);
  return {std::move(out), runner.metrics()};
}

template <typename T>
std::pair<std::vector<T>, CommMetrics> dist_mv(const Graph<T>& g,
                                               const std::vector<T>& v,
                                               std::uint64_t p,
                                               DistPolicies pol = {}) {
  if (v.size() != g.origin.cols) {
    throw_validation("vector length " + std::to_string(v.size()) +
                     " does not match matrix columns " +
                     std::to_string(g.origin.cols));
  }
  VertexStateVector<T> states(g.vertex_count, T{});
  std::copy(v.begin(), v.end(), states.begin());
  auto [out, metrics] = run_distributed(g, states, MvProgram<T>{}, p, pol);
  return {std::vector<T>(out.begin(), out.begin() + g.origin.rows),
          std::move(metrics)};
}

// Dense-right-operand product: one superstep per column, sharing the runner
// so migration decisions carry across columns.
template <typename T>
std::pair<DenseMatrix<T>, CommMetrics> dist_mm(const Graph<T>& g_b,
                                               const DenseMatrix<T>& c,
                                               std::uint64_t p,
                                               DistPolicies pol = {}) {
  if (g_b.origin.cols != c.rows) {
    throw_validation("product inner dimensions do not match");
  }
  DistributedRunner<T> runner(g_b, p, pol);
  DenseMatrix<T> out(g_b.origin.rows, c.cols);
  MvProgram<T> prog;
  for (std::uint64_t k = 0; k < c.cols; ++k) {
    VertexStateVector<T> states(g_b.vertex_count, T{});
    for (std::uint64_t j = 0; j < c.rows; ++j) states[j] = c.at(j, k);
    VertexStateVector<T> y = runner.run_pass(states, prog);
    for (std::uint64_t i = 0; i < out.rows; ++i) out.at(i, k) = y[i];
  }
  return {std::move(out), runner.metrics()};
}

// Addition partitions by destination, so every edge-weight merge is local to
// one shard: a superstep with zero message batches.
template <typename T>
std::pair<Graph<T>, CommMetrics> dist_add(const Graph<T>& a, const Graph<T>& b,
                                          std::uint64_t p, DistPolicies pol = {}) {
  PartitionAssignment asg = partition_vertices(a.vertex_count, p);
  Graph<T> sum = graph_add(a, b);
  CommMetrics metrics;
  SuperstepMetrics sm;
  sm.shard_loads.assign(p, 0.0);
  for (std::uint64_t v = 0; v < a.vertex_count; ++v) {
    sm.shard_loads[asg.shard_of(v)] +=
        static_cast<double>(a.in_degree(v) + b.in_degree(v)) *
        pol.seconds_per_edge;
  }
  metrics.supersteps.push_back(std::move(sm));
  return {std::move(sum), std::move(metrics)};
}

template <typename T>
std::pair<Graph<T>, CommMetrics> dist_rank1(const Graph<T>& g,
                                            const std::vector<T>& u,
                                            const std::vector<T>& w, bool conjugate,
                                            std::uint64_t p, DistPolicies pol = {}) {
  return dist_add(g, outer_product_graph(g, u, w, conjugate), p, pol);
}

// Product of two sparse graphs: the owner of a middle vertex j holds both
// B's row j and (via the out index) A's edges leaving j, so it emits the
// products a*b keyed by the flattened coordinate i*cols(B)+k; the key owner
// accumulates.  One superstep.
template <typename T>
std::pair<Graph<T>, CommMetrics> dist_compose(const Graph<T>& g_a,
                                              const Graph<T>& g_b,
                                              std::uint64_t p,
                                              DistPolicies pol = {}) {
  if (g_a.origin.cols != g_b.origin.rows) {
    throw_validation("composition inner dimensions do not match");
  }
  std::uint64_t rows = g_a.origin.rows;
  std::uint64_t cols = g_b.origin.cols;
  std::uint64_t m = std::max(rows, cols);
  // Shards own the union of both operand ID spaces, so middle vertices have
  // a home shard too.
  PartitionAssignment asg = partition_vertices(
      std::max(g_a.vertex_count, g_b.vertex_count), p);

  CommMetrics metrics;
  SuperstepMetrics sm;
  sm.shard_loads.assign(p, 0.0);

  // Emitted products, grouped by the shard of the result row i.
  // Locally owned products accumulate straight away; remote ones are routed
  // through encoded batches below.
  std::map<std::uint64_t, T> acc;  // flattened key -> partial sum
  std::vector<std::vector<std::vector<std::pair<std::uint64_t, T>>>> outbox(
      p, std::vector<std::vector<std::pair<std::uint64_t, T>>>(p));

  for (std::uint64_t i = 0; i < rows && i < g_a.vertex_count; ++i) {
    std::uint64_t dst_shard = asg.shard_of(i);
    auto mids = g_a.in_sources(i);
    auto aw = g_a.in_weights(i);
    for (std::size_t q = 0; q < mids.size(); ++q) {
      std::uint64_t j = mids[q];
      if (j >= g_b.vertex_count) continue;
      std::uint64_t mid_shard = asg.shard_of(j);
      auto ks = g_b.in_sources(j);
      auto bw = g_b.in_weights(j);
      sm.shard_loads[mid_shard] +=
          static_cast<double>(ks.size()) * pol.seconds_per_edge;
      for (std::size_t r = 0; r < ks.size(); ++r) {
        std::uint64_t key = i * cols + ks[r];
        T product = aw[q] * bw[r];
        if (mid_shard == dst_shard) {
          auto [it, inserted] = acc.try_emplace(key, product);
          if (!inserted) it->second += product;
        } else {
          outbox[mid_shard][dst_shard].emplace_back(key, product);
        }
      }
    }
  }

  for (std::uint64_t dst_shard = 0; dst_shard < p; ++dst_shard) {
    for (std::uint64_t src_shard = 0; src_shard < p; ++src_shard) {
      auto& contributions = outbox[src_shard][dst_shard];
      if (contributions.empty()) continue;
      sm.pre_merge += contributions.size();
      MessageBatch<T> batch;
      batch.src_shard = src_shard;
      batch.dst_shard = dst_shard;
      batch.encoding = pol.encode;
      if (pol.merge) {
        batch.entries = merge_messages(std::move(contributions),
                                       [](const T& a, const T& b) { return a + b; });
      } else {
        batch.entries = std::move(contributions);
        std::stable_sort(
            batch.entries.begin(), batch.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      sm.post_merge += batch.entries.size();
      EncodedBatch encoded = encode_batch(batch, pol.encode);
      sm.raw_bytes += encode_batch(batch, EncodeMode::Raw).bytes.size();
      sm.encoded_bytes += encoded.bytes.size();
      sm.batches += 1;
      MessageBatch<T> delivered = decode_batch<T>(encoded.bytes);
      const auto& es = delivered.entries;
      for (std::size_t k = 0; k < es.size();) {
        std::uint64_t key = es[k].first;
        T group = es[k].second;
        ++k;
        while (k < es.size() && es[k].first == key) {
          group += es[k].second;
          ++k;
        }
        auto [it, inserted] = acc.try_emplace(key, group);
        if (!inserted) it->second += group;
      }
    }
  }

  std::vector<Entry<T>> triples;
  for (const auto& [key, value] : acc) {
    if (is_zero(value)) continue;
    triples.push_back({key / cols, key % cols, value});
  }
  MatrixDescriptor origin;
  origin.rows = rows;
  origin.cols = cols;
  origin.scalar = scalar_kind_of<T>();
  Graph<T> result = graph_from_triples(m, origin, std::move(triples));
  metrics.supersteps.push_back(std::move(sm));
  return {std::move(result), std::move(metrics)};
}

}  // namespace g4s
