// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <future>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "g4s/graph.hpp"
#include "g4s/util.hpp"

namespace g4s {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;
};

// Keeps transformed graphs for reuse.  Keyed by the canonical bytes of the
// expanded matrix (descriptor plus sorted entries), so two matrices that
// expand identically share one graph.  Least recently used entries fall out
// once the capacity is exceeded.  Concurrent callers racing on the same key
// perform at most one transform; losers wait for the winner's graph.
template <typename T>
class GraphCache {
public:
  explicit GraphCache(std::size_t capacity = 64) : capacity_(capacity) {}

  std::shared_ptr<const Graph<T>> get_or_transform(const CooMatrix<T>& m) {
    std::string key = cache_key(m);
    std::shared_future<std::shared_ptr<const Graph<T>>> waiting;
    std::promise<std::shared_ptr<const Graph<T>>> promise;
    bool winner = false;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) {
        ++stats_.hits;
        lru_.splice(lru_.begin(), lru_, it->second);
        return it->second->second;
      }
      auto in = inflight_.find(key);
      if (in != inflight_.end()) {
        ++stats_.hits;
        waiting = in->second;
      } else {
        ++stats_.misses;
        winner = true;
        inflight_.emplace(key, promise.get_future().share());
      }
    }
    if (!winner) return waiting.get();

    std::shared_ptr<const Graph<T>> graph;
    try {
      graph = std::make_shared<const Graph<T>>(matrix_to_graph(m));
    } catch (...) {
      {
        std::lock_guard<std::mutex> lock(mu_);
        inflight_.erase(key);
      }
      promise.set_exception(std::current_exception());
      throw;
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      lru_.emplace_front(key, graph);
      map_[key] = lru_.begin();
      inflight_.erase(key);
      while (lru_.size() > capacity_) {
        map_.erase(lru_.back().first);
        lru_.pop_back();
        ++stats_.evictions;
      }
    }
    promise.set_value(graph);
    return graph;
  }

  CacheStats stats() const {
    std::lock_guard<std::mutex> lock(mu_);
    return stats_;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return lru_.size();
  }

  std::size_t capacity() const { return capacity_; }

private:
  using LruList = std::list<std::pair<std::string, std::shared_ptr<const Graph<T>>>>;

  static std::string cache_key(const CooMatrix<T>& m) {
    CooMatrix<T> g = expand_storage(m);
    std::vector<std::uint8_t> bytes;
    bytes.reserve(16 + g.nnz() * 24);
    put_u64(bytes, g.rows());
    put_u64(bytes, g.cols());
    put_u8(bytes, static_cast<std::uint8_t>(g.desc().scalar));
    for (const Entry<T>& e : g.entries()) {
      put_u64(bytes, e.row);
      put_u64(bytes, e.col);
      if constexpr (is_complex_v<T>) {
        put_f64(bytes, e.value.real());
        put_f64(bytes, e.value.imag());
      } else {
        put_f64(bytes, e.value);
      }
    }
    return std::string(bytes.begin(), bytes.end());
  }

  std::size_t capacity_;
  mutable std::mutex mu_;
  LruList lru_;
  std::unordered_map<std::string, typename LruList::iterator> map_;
  std::unordered_map<std::string, std::shared_future<std::shared_ptr<const Graph<T>>>>
      inflight_;
  CacheStats stats_;
};

}  // namespace g4s
