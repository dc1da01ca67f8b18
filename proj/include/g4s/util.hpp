// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <random>
#include <thread>
#include <vector>

#include "g4s/scalar.hpp"

namespace g4s {

// Resolves the effective worker count: an explicit request wins, then the
// G4S_THREADS environment variable, then the hardware concurrency.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("G4S_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs f(chunk_index) for chunk_index in [0, chunk_count) on up to `workers`
// threads.  Chunks are claimed through an atomic counter, so callers must not
// depend on which thread runs which chunk; determinism comes from chunks
// writing disjoint state.
template <typename F>
void parallel_for_chunks(std::uint64_t chunk_count, int workers, F&& f) {
  workers = resolve_workers(workers);
  if (chunk_count == 0) return;
  if (workers <= 1 || chunk_count == 1) {
    for (std::uint64_t c = 0; c < chunk_count; ++c) f(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunk_count) return;
      f(c);
    }
  };
  std::uint64_t thread_count = std::min<std::uint64_t>(
      static_cast<std::uint64_t>(workers), chunk_count);
  std::vector<std::thread> pool;
  pool.reserve(thread_count - 1);
  for (std::uint64_t t = 1; t < thread_count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Seeded random source with value mappings that do not depend on the standard
// library's distribution implementations, so identical seeds give identical
// streams everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 bits of randomness.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform in [0, n).
  std::uint64_t next_index(std::uint64_t n) {
    return n == 0 ? 0 : gen_() % n;
  }

  Complex next_complex(double lo, double hi) {
    double re = next_real(lo, hi);
    double im = next_real(lo, hi);
    return Complex(re, im);
  }

  template <typename T>
  T next_scalar(double lo, double hi) {
    if constexpr (is_complex_v<T>) {
      return next_complex(lo, hi);
    } else {
      return next_real(lo, hi);
    }
  }

private:
  std::mt19937_64 gen_;
};

// Little endian primitives used by the binary graph format and the message
// codec.
inline void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u64(out, bits);
}

// Readers operate on a cursor and report truncation to the caller.
struct ByteReader {
  const std::uint8_t* data = nullptr;
  std::size_t size = 0;
  std::size_t pos = 0;

  bool has(std::size_t n) const { return size - pos >= n; }

  std::uint8_t u8() { return data[pos++]; }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data[pos++]) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data[pos++]) << (8 * i);
    return v;
  }

  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
};

}  // namespace g4s
