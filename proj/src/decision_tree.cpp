// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#include "g4s/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include <json.hpp>

#include "g4s/error.hpp"
#include "g4s/strategy_json.hpp"

namespace g4s {

using nlohmann::json;

bool strategy_preference_less(const ExecutionStrategy& a, const ExecutionStrategy& b) {
  auto key = [](const ExecutionStrategy& s) {
    return std::make_tuple(s.model != ExecutionStrategy::Model::VertexCentric,
                           s.enabled_flags(), s.rank_tuple());
  };
  return key(a) < key(b);
}

void validate_sample(const BenchSample& s) {
  if (s.runtimes.size() < 2) {
    throw_validation("a benchmark sample needs at least 2 candidate strategies");
  }
  for (const auto& [strat, seconds] : s.runtimes) {
    validate_strategy(strat);
    if (!(seconds > 0.0) || !std::isfinite(seconds)) {
      throw_validation("benchmark runtimes must be positive finite seconds");
    }
  }
}

ExecutionStrategy BenchSample::label() const {
  validate_sample(*this);
  const auto* best = &runtimes.front();
  for (const auto& cand : runtimes) {
    if (cand.second < best->second ||
        (cand.second == best->second &&
         strategy_preference_less(cand.first, best->first))) {
      best = &cand;
    }
  }
  return best->first;
}

const ExecutionStrategy& DecisionTree::select(const FeatureVector& f) const {
  if (nodes.empty()) throw_validation("cannot select from an empty tree");
  auto x = f.numeric();
  std::size_t at = 0;
  while (!nodes[at].is_leaf()) {
    const TreeNode& n = nodes[at];
    at = x[static_cast<std::size_t>(n.feature)] < n.threshold
             ? static_cast<std::size_t>(n.left)
             : static_cast<std::size_t>(n.right);
  }
  return nodes[at].leaf;
}

std::uint64_t DecisionTree::depth() const {
  std::uint64_t best = 0;
  // Depth via iterative walk; the tree is tiny, recursion through an
  // explicit stack avoids assumptions about node ordering.
  std::vector<std::pair<std::size_t, std::uint64_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    if (nodes[at].is_leaf()) {
      best = std::max(best, d);
      continue;
    }
    stack.push_back({static_cast<std::size_t>(nodes[at].left), d + 1});
    stack.push_back({static_cast<std::size_t>(nodes[at].right), d + 1});
  }
  return best;
}

ExecutionStrategy select_strategy(const DecisionTree& tree, const FeatureVector& f) {
  return tree.select(f);
}

ExecutionStrategy static_fallback(const FeatureVector& f) {
  ExecutionStrategy s;
  if (f.op == OpKind::Add) {
    s.model = ExecutionStrategy::Model::EdgeCentric;
    return s;
  }
  if (f.density < 0.01) {
    s.model = ExecutionStrategy::Model::EdgeCentric;
    s.split_hubs = true;
    return s;
  }
  return s;
}

namespace {

struct Trainer {
  const std::vector<BenchSample>& samples;
  std::vector<std::size_t> label_of;            // per sample, canonical label id
  std::vector<ExecutionStrategy> label_set;     // id -> strategy
  TrainParams params;
  std::vector<TreeNode> nodes;

  double gini(const std::vector<std::size_t>& idx) const {
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i : idx) counts[label_of[i]]++;
    double g = 1.0;
    for (const auto& [label, c] : counts) {
      double p = static_cast<double>(c) / static_cast<double>(idx.size());
      g -= p * p;
    }
    return g;
  }

  ExecutionStrategy majority(const std::vector<std::size_t>& idx) const {
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i : idx) counts[label_of[i]]++;
    std::size_t best_count = 0;
    for (const auto& [label, c] : counts) best_count = std::max(best_count, c);
    const ExecutionStrategy* winner = nullptr;
    for (const auto& [label, c] : counts) {
      if (c != best_count) continue;
      if (!winner || strategy_preference_less(label_set[label], *winner)) {
        winner = &label_set[label];
      }
    }
    return *winner;
  }

  bool pure(const std::vector<std::size_t>& idx) const {
    for (std::size_t i : idx) {
      if (label_of[i] != label_of[idx.front()]) return false;
    }
    return true;
  }

  std::int32_t build(const std::vector<std::size_t>& idx, std::uint64_t depth) {
    std::int32_t at = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();

    bool can_split = depth < params.max_depth &&
                     idx.size() >= 2 * params.min_leaf && !pure(idx);
    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = 0.0;
    if (can_split) {
      double parent = gini(idx);
      best_score = parent;
      for (std::size_t f = 0; f < FeatureVector::kCount; ++f) {
        std::vector<double> values;
        values.reserve(idx.size());
        for (std::size_t i : idx) values.push_back(samples[i].features.numeric()[f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t v = 0; v + 1 < values.size(); ++v) {
          double t = values[v] + (values[v + 1] - values[v]) / 2.0;
          std::vector<std::size_t> left, right;
          for (std::size_t i : idx) {
            (samples[i].features.numeric()[f] < t ? left : right).push_back(i);
          }
          if (left.size() < params.min_leaf || right.size() < params.min_leaf) {
            continue;
          }
          double score = (gini(left) * left.size() + gini(right) * right.size()) /
                         static_cast<double>(idx.size());
          // Strictly-better wins; ties fall to the earlier (lower feature,
          // lower threshold) candidate already held.
          if (score < best_score - 1e-15 && score < parent - 1e-15) {
            best_score = score;
            best_feature = static_cast<int>(f);
            best_threshold = t;
          }
        }
      }
    }

    if (best_feature < 0) {
      nodes[at].feature = -1;
      nodes[at].leaf = majority(idx);
      return at;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx) {
      (samples[i].features.numeric()[static_cast<std::size_t>(best_feature)] <
               best_threshold
           ? left
           : right)
          .push_back(i);
    }
    std::int32_t l = build(left, depth + 1);
    std::int32_t r = build(right, depth + 1);
    nodes[at].feature = best_feature;
    nodes[at].threshold = best_threshold;
    nodes[at].left = l;
    nodes[at].right = r;
    return at;
  }
};

// Canonical sample order: numeric features, then platform, then the label's
// canonical rank.  Training over any permutation of the same multiset of
// samples then yields an identical tree.
void canonical_sort(std::vector<BenchSample>& samples) {
  std::sort(samples.begin(), samples.end(),
            [](const BenchSample& a, const BenchSample& b) {
              auto ka = a.features.numeric();
              auto kb = b.features.numeric();
              if (ka != kb) return ka < kb;
              if (a.features.platform != b.features.platform) {
                return a.features.platform < b.features.platform;
              }
              return a.label().rank_tuple() < b.label().rank_tuple();
            });
}

}  // namespace

DecisionTree train_tree(std::vector<BenchSample> samples, TrainParams params) {
  if (params.min_leaf < 1) throw_validation("min_leaf must be at least 1");
  if (samples.size() < 2 * params.min_leaf) {
    throw_validation("training needs at least " +
                     std::to_string(2 * params.min_leaf) + " samples, got " +
                     std::to_string(samples.size()));
  }
  for (const auto& s : samples) validate_sample(s);
  canonical_sort(samples);

  Trainer tr{samples, {}, {}, params, {}};
  tr.label_of.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ExecutionStrategy label = samples[i].label();
    std::size_t id = 0;
    for (; id < tr.label_set.size(); ++id) {
      if (tr.label_set[id] == label) break;
    }
    if (id == tr.label_set.size()) tr.label_set.push_back(label);
    tr.label_of[i] = id;
  }

  std::vector<std::size_t> all(samples.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  tr.build(all, 0);

  DecisionTree tree;
  tree.nodes = std::move(tr.nodes);
  tree.params = params;
  return tree;
}

std::string tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes) {
    if (n.is_leaf()) {
      nodes.push_back(json{{"leaf", n.leaf}});
    } else {
      nodes.push_back(json{{"feature", n.feature},
                           {"feature_name", feature_names()[n.feature]},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right}});
    }
  }
  json doc{{"version", 1},
           {"max_depth", tree.params.max_depth},
           {"min_leaf", tree.params.min_leaf},
           {"nodes", nodes}};
  return doc.dump(2) + "\n";
}

DecisionTree tree_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw_parse(std::string("tree JSON: ") + e.what());
  }
  try {
    DecisionTree tree;
    tree.params.max_depth = doc.value("max_depth", std::uint64_t{6});
    tree.params.min_leaf = doc.value("min_leaf", std::uint64_t{3});
    const json& nodes = doc.at("nodes");
    for (const json& n : nodes) {
      TreeNode node;
      if (n.contains("leaf")) {
        node.feature = -1;
        node.leaf = n.at("leaf").get<ExecutionStrategy>();
      } else {
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<std::int32_t>();
        node.right = n.at("right").get<std::int32_t>();
        if (node.feature < 0 ||
            node.feature >= static_cast<int>(FeatureVector::kCount)) {
          throw_parse("tree node references an unknown feature index");
        }
      }
      tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) throw_parse("tree has no nodes");
    auto bound = static_cast<std::int32_t>(tree.nodes.size());
    for (const TreeNode& n : tree.nodes) {
      if (n.is_leaf()) continue;
      if (n.left < 0 || n.left >= bound || n.right < 0 || n.right >= bound) {
        throw_parse("tree node child index out of range");
      }
    }
    return tree;
  } catch (const json::exception& e) {
    throw_parse(std::string("tree JSON: ") + e.what());
  }
}

std::string samples_to_json(const std::vector<BenchSample>& samples) {
  json rows = json::array();
  for (const BenchSample& s : samples) {
    json runtimes = json::array();
    for (const auto& [strat, seconds] : s.runtimes) {
      runtimes.push_back(json{{"strategy", strat}, {"seconds", seconds}});
    }
    rows.push_back(json{{"features", s.features},
                        {"runtimes", runtimes},
                        {"label", s.label()}});
  }
  json doc{{"version", 1}, {"samples", rows}};
  return doc.dump(2) + "\n";
}

std::vector<BenchSample> samples_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw_parse(std::string("samples JSON: ") + e.what());
  }
  try {
    std::vector<BenchSample> samples;
    for (const json& row : doc.at("samples")) {
      BenchSample s;
      s.features = row.at("features").get<FeatureVector>();
      for (const json& rt : row.at("runtimes")) {
        s.runtimes.emplace_back(rt.at("strategy").get<ExecutionStrategy>(),
                                rt.at("seconds").get<double>());
      }
      validate_sample(s);
      samples.push_back(std::move(s));
    }
    return samples;
  } catch (const json::exception& e) {
    throw_parse(std::string("samples JSON: ") + e.what());
  }
}

}  // namespace g4s
