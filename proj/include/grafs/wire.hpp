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
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grafs/error.hpp"
#include "grafs/facet.hpp"
#include "grafs/index.hpp"
#include "json.hpp"

// JSON mapping of the exploration API. Objects are emitted with sorted keys
// (nlohmann's default object type), so dump() output is canonical.
namespace grafs::wire {

using json = nlohmann::json;

struct ApiError {
  std::string code;  // bad_query, unknown_concept, added_not_in_results,
                     // not_found, unavailable, internal
  std::string message;
  std::optional<std::size_t> position;

  int status() const {
    if (code == "bad_query" || code == "added_not_in_results") return 400;
    if (code == "unknown_concept" || code == "not_found") return 404;
    if (code == "unavailable") return 503;
    return 500;
  }

  json to_json() const {
    json err{{"code", code}, {"message", message}};
    if (position) err["position"] = *position;
    return json{{"error", std::move(err)}};
  }
};

inline ApiError to_api_error(const std::exception& e) {
  if (const auto* q = dynamic_cast<const QuerySyntaxError*>(&e))
    return {"bad_query", q->what(), q->position()};
  if (const auto* g = dynamic_cast<const Error*>(&e)) {
    switch (g->kind()) {
      case Error::Kind::kQuerySyntax:
      case Error::Kind::kInvalidArgument:
      case Error::Kind::kEmptyResult:
        return {"bad_query", g->what(), std::nullopt};
      case Error::Kind::kUnknownConcept:
        return {"unknown_concept", g->what(), std::nullopt};
      case Error::Kind::kForcedNotCandidate:
        return {"added_not_in_results", g->what(), std::nullopt};
      default:
        return {"internal", g->what(), std::nullopt};
    }
  }
  if (dynamic_cast<const json::exception*>(&e) != nullptr)
    return {"bad_query", std::string("invalid JSON: ") + e.what(),
            std::nullopt};
  return {"internal", e.what(), std::nullopt};
}

namespace detail {

[[noreturn]] inline void reject(const std::string& what) {
  throw Error(Error::Kind::kInvalidArgument, what);
}

inline std::size_t positive(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    reject(std::string("\"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

inline std::vector<std::string> id_list(const json& v, const char* key) {
  if (!v.is_array())
    reject(std::string("\"") + key + "\" must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string())
      reject(std::string("\"") + key + "\" must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

// Decodes an explore request body. Unknown fields and wrong types are
// rejected; lambda is clamped into (0, 1).
inline FacetRequest parse_explore_request(const json& body) {
  if (!body.is_object()) detail::reject("request body must be a JSON object");
  FacetRequest req;
  bool has_query = false;
  for (const auto& [key, v] : body.items()) {
    if (key == "query") {
      if (!v.is_string()) detail::reject("\"query\" must be a string");
      req.query = v.get<std::string>();
      has_query = true;
    } else if (key == "n") {
      req.n = detail::positive(v, "n");
    } else if (key == "k") {
      req.k = detail::positive(v, "k");
    } else if (key == "m") {
      req.m = detail::positive(v, "m");
    } else if (key == "page") {
      req.page = detail::positive(v, "page");
    } else if (key == "page_size") {
      req.page_size = detail::positive(v, "page_size");
    } else if (key == "lambda") {
      if (!v.is_number()) detail::reject("\"lambda\" must be a number");
      req.lambda = clamp_lambda(v.get<double>());
    } else if (key == "selected") {
      req.selected = detail::id_list(v, "selected");
    } else if (key == "deleted") {
      req.deleted = detail::id_list(v, "deleted");
    } else if (key == "added") {
      req.added = detail::id_list(v, "added");
    } else {
      detail::reject("unknown request field \"" + key + "\"");
    }
  }
  if (!has_query) detail::reject("missing field \"query\"");
  return req;
}

inline json request_to_json(const FacetRequest& r) {
  return json{{"query", r.query},       {"n", r.n},
              {"k", r.k},               {"lambda", r.lambda},
              {"m", r.m},               {"selected", r.selected},
              {"deleted", r.deleted},   {"added", r.added},
              {"page", r.page},         {"page_size", r.page_size}};
}

inline json mention_to_json(const ConceptMention& m) {
  return json{{"concept_id", m.concept_id}, {"field", field_name(m.field)},
              {"char_start", m.char_start}, {"char_end", m.char_end},
              {"token_start", m.token_start}, {"token_end", m.token_end}};
}

inline json mentions_to_json(const std::vector<ConceptMention>& mentions) {
  json out = json::array();
  for (const auto& m : mentions) out.push_back(mention_to_json(m));
  return out;
}

inline json document_to_json(const IndexedDocument& d) {
  return json{{"doc_id", d.doc.id},
              {"title", d.doc.title},
              {"text", d.doc.text},
              {"mentions", mentions_to_json(d.mentions)}};
}

inline json sentence_to_json(const ProvenanceSentence& s) {
  return json{{"doc_id", s.doc_id},         {"field", field_name(s.field)},
              {"char_start", s.char_start}, {"char_end", s.char_end},
              {"text", s.text},             {"score", s.relevance_score},
              {"mmr_score", s.mmr_score}};
}

inline json sentences_to_json(const std::vector<ProvenanceSentence>& ss) {
  json out = json::array();
  for (const auto& s : ss) out.push_back(sentence_to_json(s));
  return out;
}

namespace detail {

inline json tree_to_json(const ClusterTree& tree, std::size_t node) {
  const ClusterNode& n = tree.node(node);
  if (n.is_leaf()) return n.concept_id;
  return json::array(
      {tree_to_json(tree, n.left), tree_to_json(tree, n.right)});
}

}  // namespace detail

// H_q with its partitioning. The CLI `subgraph --format json` prints exactly
// this object, and /api/explore embeds it under "subgraph".
inline json subgraph_to_json(const KnowledgeView& view, const Index& index,
                             std::size_t total_docs) {
  const KnowledgeSubgraph& g = view.subgraph;
  json concepts = json::array();
  for (const auto& c : g.concepts) {
    concepts.push_back(
        {{"concept_id", c.concept_id},
         {"name", index.vocabulary().entry(c.ordinal).preferred_name},
         {"relevance", c.relevance},
         {"step_score", c.step_score ? json(*c.step_score) : json(nullptr)}});
  }
  json partitions = json::array();
  for (const auto& p : view.partitions)
    partitions.push_back({{"group_id", p.group_id}, {"members", p.members}});
  json heights = json::array();
  for (const auto& n : view.tree.nodes)
    if (!n.is_leaf()) heights.push_back(n.height);
  return json{
      {"total_docs", total_docs},
      {"concepts", std::move(concepts)},
      {"cooccurrence", g.cooccurrence},
      {"leaf_order", view.leaf_order},
      {"partitions", std::move(partitions)},
      {"tree", view.tree.empty() ? json(nullptr)
                                 : detail::tree_to_json(view.tree,
                                                        view.tree.root)},
      {"merge_heights", std::move(heights)},
  };
}

inline json view_to_json(const ViewModel& v, const Index& index) {
  json facets = json::array();
  for (const auto& f : v.facets)
    facets.push_back({{"concept_id", f.concept_id},
                      {"name", f.name},
                      {"group_id", f.group_id},
                      {"relevance", f.relevance},
                      {"selected", f.selected}});
  json arcs = json::array();
  for (const auto& a : v.arcs)
    arcs.push_back({{"target", a.target}, {"weight", a.weight}});
  json treemap = json::array();
  for (const auto& t : v.treemap) {
    json node{{"concept_id", t.concept_id},
              {"group_id", t.group_id},
              {"prevalence", t.prevalence}};
    if (t.overlap_fraction) node["overlap_fraction"] = *t.overlap_fraction;
    treemap.push_back(std::move(node));
  }
  json deleted = json::array();
  for (const auto& [id, name] : v.deleted)
    deleted.push_back({{"concept_id", id}, {"name", name}});
  json hits = json::array();
  for (const auto& d : v.documents)
    hits.push_back({{"doc_id", d.doc_id},
                    {"rank", d.rank},
                    {"score", d.score},
                    {"title", d.title},
                    {"text", d.text},
                    {"mentions", mentions_to_json(d.mentions)}});
  json provenance = json::array();
  for (const auto& [id, ss] : v.provenance)
    provenance.push_back(
        {{"concept_id", id}, {"sentences", sentences_to_json(ss)}});

  return json{
      {"index_fingerprint", index.fingerprint()},
      {"params", request_to_json(v.request)},
      {"total_results", v.total_results},
      {"subgraph", subgraph_to_json(v.knowledge, index, v.total_results)},
      {"facets", std::move(facets)},
      {"display_order", v.display_order},
      {"arcs", std::move(arcs)},
      {"treemap", std::move(treemap)},
      {"deleted", std::move(deleted)},
      {"documents",
       {{"total", v.filtered_total},
        {"page", v.request.page},
        {"page_size", v.request.page_size},
        {"hits", std::move(hits)}}},
      {"provenance", std::move(provenance)},
  };
}

}  // namespace grafs::wire
