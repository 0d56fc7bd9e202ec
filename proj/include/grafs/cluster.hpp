// Copyright 2026 The GRAFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grafs/error.hpp"
#include "grafs/index.hpp"
#include "grafs/subgraph.hpp"

namespace grafs {

using DistanceTable = std::vector<std::vector<double>>;

// |A u B| - |A n B| for sorted doc sets.
inline std::size_t symmetric_difference_size(std::span<const DocOrdinal> a,
                                             std::span<const DocOrdinal> b) {
  return a.size() + b.size() - 2 * intersection_size(a, b);
}

inline std::size_t concept_distance(const Index& index, std::string_view ci,
                                    std::string_view cj,
                                    std::span<const DocOrdinal> dq) {
  const DocSet docs = sorted_docs(dq);
  const Vocabulary& vocab = index.vocabulary();
  return symmetric_difference_size(restrict_to(index, vocab.ordinal(ci), docs),
                                   restrict_to(index, vocab.ordinal(cj), docs));
}

// Pairwise distances between the subgraph's concepts, in selection order.
inline DistanceTable distance_table(const KnowledgeSubgraph& g) {
  const std::size_t k = g.size();
  DistanceTable d(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      d[i][j] = d[j][i] = static_cast<double>(symmetric_difference_size(
          g.concepts[i].doc_set, g.concepts[j].doc_set));
  return d;
}

// Leaves occupy nodes [0, n) in input order and every merge appends one
// node. Creation indices count leaves (input order) and merges (merge
// order) separately; left/right placement compares (creation_index,
// is_merge).
struct ClusterNode {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t left = kNone;
  std::size_t right = kNone;
  std::string concept_id;  // leaves only
  double height = 0.0;
  std::size_t leaf_count = 1;
  std::size_t creation_index = 0;
  std::string min_id;  // smallest concept id below this node

  bool is_leaf() const { return left == kNone; }
  bool created_before(const ClusterNode& o) const {
    if (creation_index != o.creation_index)
      return creation_index < o.creation_index;
    return is_leaf() && !o.is_leaf();
  }
};

struct ClusterTree {
  std::vector<ClusterNode> nodes;
  std::size_t root = ClusterNode::kNone;

  bool empty() const { return nodes.empty(); }
  std::size_t leaf_count() const {
    return empty() ? 0 : nodes[root].leaf_count;
  }
  const ClusterNode& node(std::size_t i) const { return nodes[i]; }
};

struct Partition {
  std::size_t group_id = 0;
  std::vector<std::string> members;  // leaf order

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Complete-linkage agglomeration. Each step merges the pair of clusters with
// the smallest maximum cross distance; equal distances go to the pair whose
// (smaller min id, larger min id) is lexicographically first. The child
// created earlier becomes the left child.
inline ClusterTree agglomerate(std::span<const std::string> concepts,
                               const DistanceTable& distances) {
  ClusterTree tree;
  const std::size_t n = concepts.size();
  if (n == 0) return tree;
  if (distances.size() != n)
    throw Error(Error::Kind::kInvalidArgument, "distance table size mismatch");

  const std::size_t total = 2 * n - 1;
  tree.nodes.reserve(total);
  for (std::size_t i = 0; i < n; ++i) {
    ClusterNode leaf;
    leaf.concept_id = concepts[i];
    leaf.min_id = concepts[i];
    leaf.creation_index = i;
    tree.nodes.push_back(std::move(leaf));
  }

  // linkage over slots; a merged cluster reuses the slot of one child.
  DistanceTable linkage(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) linkage[i][j] = distances[i][j];
  std::vector<std::size_t> slot(total, 0);
  for (std::size_t i = 0; i < n; ++i) slot[i] = i;

  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;

  while (live.size() > 1) {
    std::size_t ba = 0, bb = 0;
    bool found = false;
    double best = 0.0;
    const std::string* key_lo = nullptr;
    const std::string* key_hi = nullptr;
    for (std::size_t x = 0; x < live.size(); ++x) {
      for (std::size_t y = x + 1; y < live.size(); ++y) {
        const std::size_t a = live[x], b = live[y];
        const double d = linkage[slot[a]][slot[b]];
        const std::string* lo = &tree.nodes[a].min_id;
        const std::string* hi = &tree.nodes[b].min_id;
        if (*hi < *lo) std::swap(lo, hi);
        const bool better =
            !found || d < best ||
            (d == best && (*lo < *key_lo || (*lo == *key_lo && *hi < *key_hi)));
        if (better) {
          found = true;
          best = d;
          ba = x;
          bb = y;
          key_lo = lo;
          key_hi = hi;
        }
      }
    }
    const std::size_t a = live[ba], b = live[bb];
    ClusterNode merged;
    const bool a_first = tree.nodes[a].created_before(tree.nodes[b]);
    merged.left = a_first ? a : b;
    merged.right = a_first ? b : a;
    merged.creation_index = tree.nodes.size() - n;
    merged.height = best;
    merged.leaf_count = tree.nodes[a].leaf_count + tree.nodes[b].leaf_count;
    merged.min_id = std::min(tree.nodes[a].min_id, tree.nodes[b].min_id);
    const std::size_t id = tree.nodes.size();
    tree.nodes.push_back(std::move(merged));

    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bb));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(ba));
    const std::size_t sa = slot[a], sb = slot[b];
    slot[id] = sa;
    for (std::size_t other : live) {
      const std::size_t so = slot[other];
      linkage[sa][so] = linkage[so][sa] =
          std::max(linkage[sa][so], linkage[sb][so]);
    }
    live.push_back(id);
  }
  tree.root = live.front();
  return tree;
}

namespace detail {

inline void collect_leaves(const ClusterTree& tree, std::size_t node,
                           std::vector<std::string>& out) {
  const ClusterNode& n = tree.nodes[node];
  if (n.is_leaf()) {
    out.push_back(n.concept_id);
    return;
  }
  collect_leaves(tree, n.left, out);
  collect_leaves(tree, n.right, out);
}

inline void cut(const ClusterTree& tree, std::size_t node,
                std::size_t total_leaves, std::vector<Partition>& out) {
  const ClusterNode& n = tree.nodes[node];
  if (n.is_leaf() || 3 * n.leaf_count <= total_leaves) {
    Partition p;
    p.group_id = out.size();
    collect_leaves(tree, node, p.members);
    out.push_back(std::move(p));
    return;
  }
  cut(tree, n.left, total_leaves, out);
  cut(tree, n.right, total_leaves, out);
}

}  // namespace detail

inline std::vector<std::string> leaf_order(const ClusterTree& tree) {
  std::vector<std::string> out;
  if (!tree.empty()) detail::collect_leaves(tree, tree.root, out);
  return out;
}

// Largest subtrees holding at most a third of all leaves (3 * size <= n,
// integer arithmetic). A lone leaf is always a partition.
inline std::vector<Partition> cut_partitions(const ClusterTree& tree,
                                             std::size_t total_leaves) {
  std::vector<Partition> out;
  if (!tree.empty()) detail::cut(tree, tree.root, total_leaves, out);
  return out;
}

}  // namespace grafs
