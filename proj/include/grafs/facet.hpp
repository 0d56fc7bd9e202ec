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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "grafs/cluster.hpp"
#include "grafs/error.hpp"
#include "grafs/index.hpp"
#include "grafs/provenance.hpp"
#include "grafs/query.hpp"
#include "grafs/subgraph.hpp"

namespace grafs {

inline constexpr std::size_t kDefaultPageSize = 10;
inline constexpr std::size_t kArcLimit = 5;

// One exploration step as sent by a client. The client owns all state.
struct FacetRequest {
  std::string query;
  std::size_t n = kDefaultResultLimit;
  std::size_t k = kDefaultSubgraphSize;
  double lambda = kDefaultLambda;
  std::size_t m = kDefaultProvenanceCount;
  std::vector<std::string> selected;
  std::vector<std::string> deleted;
  std::vector<std::string> added;
  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;

  QuerySpec query_spec() const {
    return QuerySpec{query, n, k, lambda, added, deleted};
  }

  void validate(const Vocabulary& vocab) const {
    query_spec().validate();
    if (m < 1) throw Error(Error::Kind::kInvalidArgument, "m must be >= 1");
    if (page < 1)
      throw Error(Error::Kind::kInvalidArgument, "page must be >= 1");
    if (page_size < 1)
      throw Error(Error::Kind::kInvalidArgument, "page_size must be >= 1");
    for (const auto* list : {&selected, &deleted})
      for (const auto& id : *list) vocab.ordinal(id);
    // An added id the vocabulary does not know cannot occur in D_q either.
    for (const auto& id : added)
      if (!vocab.find(id))
        throw Error(Error::Kind::kForcedNotCandidate,
                    "added concept " + id + " is not mentioned in the results");
    const std::unordered_set<std::string> del(deleted.begin(), deleted.end());
    for (const auto& id : selected)
      if (del.contains(id))
        throw Error(Error::Kind::kInvalidArgument,
                    "concept " + id + " is both selected and deleted");
  }
};

// H_q together with its dendrogram and partitions.
struct KnowledgeView {
  KnowledgeSubgraph subgraph;
  ClusterTree tree;
  std::vector<Partition> partitions;
  std::vector<std::string> leaf_order;

  std::size_t group_of(std::string_view id) const {
    for (const auto& p : partitions)
      for (const auto& m : p.members)
        if (m == id) return p.group_id;
    return 0;
  }
};

struct Facet {
  std::string concept_id;
  std::string name;
  std::size_t group_id = 0;
  std::size_t relevance = 0;
  bool selected = false;
};

struct Arc {
  std::string target;
  std::size_t weight = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct TreemapNode {
  std::string concept_id;
  std::size_t group_id = 0;
  std::size_t prevalence = 0;
  std::optional<double> overlap_fraction;
};

struct DocumentHit {
  std::string doc_id;
  std::size_t rank = 0;  // rank within D_q
  double score = 0.0;
  std::string title;
  std::string text;
  std::vector<ConceptMention> mentions;
};

struct ViewModel {
  FacetRequest request;
  std::size_t total_results = 0;  // |D_q|
  KnowledgeView knowledge;
  std::vector<Facet> facets;  // leaf order
  std::vector<std::string> display_order;  // selected first, then leaf order
  std::vector<Arc> arcs;
  std::vector<TreemapNode> treemap;
  std::vector<std::pair<std::string, std::string>> deleted;  // id, name
  std::size_t filtered_total = 0;
  std::vector<DocumentHit> documents;  // current page
  std::vector<std::pair<std::string, std::vector<ProvenanceSentence>>>
      provenance;
};

inline std::vector<DocOrdinal> hit_ordinals(std::span<const SearchHit> hits) {
  std::vector<DocOrdinal> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.doc);
  return out;
}

// Candidates, stop-concept removal (added ids exempt), greedy selection,
// clustering, partitioning and leaf order.
inline KnowledgeView build_knowledge_view(const Index& index,
                                          std::span<const DocOrdinal> dq,
                                          const QuerySpec& spec) {
  KnowledgeView view;
  const CandidateConceptSet all = candidate_concepts(index, dq);
  for (const auto& id : spec.forced_include)
    if (all.find(id) == nullptr)
      throw Error(Error::Kind::kForcedNotCandidate,
                  "added concept " + id + " is not mentioned in the results");
  const CandidateConceptSet cands =
      remove_stop_concepts(all, all.total_docs, spec.forced_include);
  view.subgraph = select_subgraph(cands, spec);

  std::vector<std::string> ids;
  for (const auto& c : view.subgraph.concepts) ids.push_back(c.concept_id);
  view.tree = agglomerate(ids, distance_table(view.subgraph));
  view.partitions = cut_partitions(view.tree, ids.size());
  view.leaf_order = leaf_order(view.tree);
  return view;
}

// Docs of D_q (kept in the given order) containing every selected concept.
inline DocSet selection_docs(const Index& index,
                             std::span<const DocOrdinal> dq_sorted,
                             std::span<const std::string> selected) {
  DocSet acc(dq_sorted.begin(), dq_sorted.end());
  for (const auto& id : selected) {
    acc = intersect(acc, index.concept_documents(id));
    if (acc.empty()) break;
  }
  return acc;
}

inline std::vector<DocOrdinal> apply_filters(
    const Index& index, std::span<const DocOrdinal> dq_ranked,
    std::span<const std::string> selected) {
  for (const auto& id : selected) index.vocabulary().ordinal(id);
  if (selected.empty())
    return std::vector<DocOrdinal>(dq_ranked.begin(), dq_ranked.end());
  const DocSet keep = selection_docs(index, sorted_docs(dq_ranked), selected);
  std::vector<DocOrdinal> out;
  for (DocOrdinal d : dq_ranked)
    if (std::binary_search(keep.begin(), keep.end(), d)) out.push_back(d);
  return out;
}

namespace detail {

inline std::vector<Arc> arcs_for(const KnowledgeSubgraph& g,
                                 const DocSet& selection,
                                 std::span<const std::string> selected,
                                 std::size_t limit) {
  const std::unordered_set<std::string_view> chosen(selected.begin(),
                                                    selected.end());
  std::vector<Arc> arcs;
  for (const auto& c : g.concepts) {
    if (chosen.contains(c.concept_id)) continue;
    const std::size_t w = intersection_size(selection, c.doc_set);
    if (w >= 1) arcs.push_back({c.concept_id, w});
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.target < b.target;
  });
  if (arcs.size() > limit) arcs.resize(limit);
  return arcs;
}

inline std::vector<TreemapNode> treemap_for(
    const KnowledgeSubgraph& g, std::span<const Partition> partitions,
    const DocSet* selection) {
  std::vector<TreemapNode> out;
  for (const auto& p : partitions) {
    for (const auto& id : p.members) {
      const auto pos = g.position(id);
      if (!pos) continue;
      const SubgraphConcept& c = g.concepts[*pos];
      TreemapNode node{c.concept_id, p.group_id, c.relevance, std::nullopt};
      if (selection != nullptr && c.relevance > 0)
        node.overlap_fraction =
            static_cast<double>(intersection_size(c.doc_set, *selection)) /
            static_cast<double>(c.relevance);
      out.push_back(std::move(node));
    }
  }
  return out;
}

}  // namespace detail

// Arcs from the selection to the non-selected subgraph concepts that
// co-occur most with the intersection of the selected concepts' documents.
inline std::vector<Arc> top_arcs(const Index& index,
                                 std::span<const DocOrdinal> dq,
                                 const KnowledgeSubgraph& subgraph,
                                 std::span<const std::string> selected,
                                 std::size_t limit = kArcLimit) {
  if (selected.empty()) return {};
  const DocSet sel = selection_docs(index, sorted_docs(dq), selected);
  return detail::arcs_for(subgraph, sel, selected, limit);
}

inline std::vector<TreemapNode> treemap_data(
    const Index& index, std::span<const DocOrdinal> dq,
    const KnowledgeSubgraph& subgraph, std::span<const Partition> partitions,
    std::span<const std::string> selected) {
  if (selected.empty())
    return detail::treemap_for(subgraph, partitions, nullptr);
  const DocSet sel = selection_docs(index, sorted_docs(dq), selected);
  return detail::treemap_for(subgraph, partitions, &sel);
}

// Runs one exploration step: retrieve D_q, rebuild the knowledge subgraph
// under the request's edits, then filter, relate and explain the selection.
inline ViewModel explore(const Index& index, const FacetRequest& req) {
  req.validate(index.vocabulary());
  const QueryAst ast = parse_query(req.query);

  ViewModel view;
  view.request = req;
  for (const auto& id : req.deleted)
    view.deleted.emplace_back(
        id, index.vocabulary().entry(index.vocabulary().ordinal(id))
                .preferred_name);

  const std::vector<SearchHit> hits = index.search(ast, req.n);
  view.total_results = hits.size();
  const std::vector<DocOrdinal> dq = hit_ordinals(hits);
  if (dq.empty()) {
    if (!req.added.empty())
      throw Error(Error::Kind::kForcedNotCandidate,
                  "added concept " + req.added.front() +
                      " is not mentioned in the results");
    if (!req.selected.empty())
      throw Error(Error::Kind::kInvalidArgument,
                  "selected concept " + req.selected.front() +
                      " is not in the facet list");
    return view;
  }

  view.knowledge = build_knowledge_view(index, dq, req.query_spec());
  const KnowledgeSubgraph& g = view.knowledge.subgraph;
  for (const auto& id : req.selected)
    if (!g.position(id))
      throw Error(Error::Kind::kInvalidArgument,
                  "selected concept " + id + " is not in the facet list");

  const std::unordered_set<std::string_view> chosen(req.selected.begin(),
                                                    req.selected.end());
  for (const auto& p : view.knowledge.partitions) {
    for (const auto& id : p.members) {
      const SubgraphConcept& c = g.concepts[*g.position(id)];
      view.facets.push_back(
          {id, index.vocabulary().entry(c.ordinal).preferred_name, p.group_id,
           c.relevance, chosen.contains(id)});
    }
  }
  view.display_order = req.selected;
  for (const auto& f : view.facets)
    if (!f.selected) view.display_order.push_back(f.concept_id);

  const DocSet dq_sorted = sorted_docs(dq);
  std::vector<DocOrdinal> filtered;
  if (req.selected.empty()) {
    filtered = dq;
    view.treemap =
        detail::treemap_for(g, view.knowledge.partitions, nullptr);
  } else {
    const DocSet sel = selection_docs(index, dq_sorted, req.selected);
    for (DocOrdinal d : dq)
      if (std::binary_search(sel.begin(), sel.end(), d)) filtered.push_back(d);
    view.arcs = detail::arcs_for(g, sel, req.selected, kArcLimit);
    view.treemap = detail::treemap_for(g, view.knowledge.partitions, &sel);
  }
  view.filtered_total = filtered.size();

  std::unordered_map<DocOrdinal, const SearchHit*> by_doc;
  for (const auto& h : hits) by_doc.emplace(h.doc, &h);
  // Out-of-range pages are empty; the division avoids overflow.
  if (req.page - 1 <= filtered.size() / req.page_size) {
    const std::size_t start = (req.page - 1) * req.page_size;
    const std::size_t count =
        std::min(filtered.size() - std::min(start, filtered.size()),
                 req.page_size);
    for (std::size_t i = start; i < start + count; ++i) {
      const SearchHit& h = *by_doc.at(filtered[i]);
      const IndexedDocument& d = index.doc(h.doc);
      view.documents.push_back(
          {h.doc_id, h.rank, h.score, d.doc.title, d.doc.text, d.mentions});
    }
  }

  const std::vector<std::string> terms = positive_terms(ast);
  for (const auto& id : req.selected)
    view.provenance.emplace_back(
        id, select_sentences(index, id, terms, dq, req.m));
  return view;
}

}  // namespace grafs
