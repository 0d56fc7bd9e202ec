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
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "grafs/error.hpp"
#include "grafs/index.hpp"

namespace grafs {

inline constexpr std::size_t kDefaultResultLimit = 1000;
inline constexpr std::size_t kDefaultSubgraphSize = 20;
inline constexpr double kDefaultLambda = 0.5;

// Clamps into the open interval (0, 1). NaN is rejected.
inline double clamp_lambda(double lambda) {
  if (std::isnan(lambda))
    throw Error(Error::Kind::kInvalidArgument, "lambda must be a number");
  const double lo = std::nextafter(0.0, 1.0);
  const double hi = std::nextafter(1.0, 0.0);
  return std::clamp(lambda, lo, hi);
}

struct QuerySpec {
  std::string query;
  std::size_t result_limit = kDefaultResultLimit;  // n = |D_q|
  std::size_t subgraph_size = kDefaultSubgraphSize;  // k
  double lambda = kDefaultLambda;
  std::vector<std::string> forced_include;
  std::vector<std::string> excluded;

  void validate() const {
    if (result_limit < 1)
      throw Error(Error::Kind::kInvalidArgument, "n must be >= 1");
    if (subgraph_size < 1)
      throw Error(Error::Kind::kInvalidArgument, "k must be >= 1");
    if (!(lambda > 0.0 && lambda < 1.0))
      throw Error(Error::Kind::kInvalidArgument, "lambda must lie in (0, 1)");
    const std::unordered_set<std::string> ex(excluded.begin(), excluded.end());
    for (const auto& id : forced_include)
      if (ex.contains(id))
        throw Error(Error::Kind::kInvalidArgument,
                    "concept " + id + " is both included and excluded");
  }
};

struct CandidateConcept {
  ConceptOrdinal ordinal = 0;
  std::string concept_id;
  DocSet doc_set;  // within D_q

  std::size_t relevance() const { return doc_set.size(); }
};

// C_q: every concept mentioned in D_q, ordered by concept id.
struct CandidateConceptSet {
  std::vector<CandidateConcept> concepts;
  std::size_t total_docs = 0;

  const CandidateConcept* find(std::string_view id) const {
    auto it = std::lower_bound(
        concepts.begin(), concepts.end(), id,
        [](const CandidateConcept& c, std::string_view v) {
          return c.concept_id < v;
        });
    if (it == concepts.end() || it->concept_id != id) return nullptr;
    return &*it;
  }
};

struct SubgraphConcept {
  ConceptOrdinal ordinal = 0;
  std::string concept_id;
  std::size_t relevance = 0;
  std::optional<double> step_score;  // empty for forced seeds
  DocSet doc_set;
};

// H_q: the selected concepts in selection order plus their pairwise
// co-occurrence counts (diagonal left at zero).
struct KnowledgeSubgraph {
  std::vector<SubgraphConcept> concepts;
  std::vector<std::vector<std::size_t>> cooccurrence;
  std::size_t total_docs = 0;

  std::size_t size() const { return concepts.size(); }

  std::optional<std::size_t> position(std::string_view id) const {
    for (std::size_t i = 0; i < concepts.size(); ++i)
      if (concepts[i].concept_id == id) return i;
    return std::nullopt;
  }
};

inline DocSet sorted_docs(std::span<const DocOrdinal> docs) {
  DocSet out(docs.begin(), docs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Concept postings restricted to D_q (D_q given in any order).
inline DocSet restrict_to(const Index& index, ConceptOrdinal c,
                          std::span<const DocOrdinal> dq_sorted) {
  return intersect(index.concept_postings(c), dq_sorted);
}

inline CandidateConceptSet candidate_concepts(const Index& index,
                                              std::span<const DocOrdinal> dq) {
  if (dq.empty())
    throw Error(Error::Kind::kEmptyResult, "the query retrieved no documents");
  const DocSet docs = sorted_docs(dq);
  std::unordered_map<ConceptOrdinal, DocSet> sets;
  for (DocOrdinal d : docs)
    for (ConceptOrdinal c : index.doc(d).concepts) sets[c].push_back(d);

  CandidateConceptSet out;
  out.total_docs = docs.size();
  out.concepts.reserve(sets.size());
  const Vocabulary& vocab = index.vocabulary();
  for (auto& [c, set] : sets)
    out.concepts.push_back({c, vocab.entry(c).concept_id, std::move(set)});
  std::sort(out.concepts.begin(), out.concepts.end(),
            [](const CandidateConcept& a, const CandidateConcept& b) {
              return a.concept_id < b.concept_id;
            });
  return out;
}

// Drops stop concepts, those mentioned in more than half of D_q
// (2 * r > |D_q|). Ids listed in exempt are always kept.
inline CandidateConceptSet remove_stop_concepts(
    const CandidateConceptSet& cands, std::size_t total_docs,
    std::span<const std::string> exempt = {}) {
  if (total_docs < 1)
    throw Error(Error::Kind::kInvalidArgument, "total_docs must be >= 1");
  const std::unordered_set<std::string_view> keep(exempt.begin(), exempt.end());
  CandidateConceptSet out;
  out.total_docs = cands.total_docs;
  for (const auto& c : cands.concepts)
    if (2 * c.relevance() <= total_docs || keep.contains(c.concept_id))
      out.concepts.push_back(c);
  return out;
}

// s(c1, c2): documents of D_q mentioning both concepts.
inline std::size_t cooccurrence(const Index& index, std::string_view c1,
                                std::string_view c2,
                                std::span<const DocOrdinal> dq) {
  const DocSet docs = sorted_docs(dq);
  const DocSet a = restrict_to(index, index.vocabulary().ordinal(c1), docs);
  const DocSet b = restrict_to(index, index.vocabulary().ordinal(c2), docs);
  return intersection_size(a, b);
}

// Greedy relevance/coverage selection. Forced concepts seed the selection in
// the given order; afterwards each step appends the unselected candidate
// maximizing  lambda * r(c) - (1 - lambda) * max_{selected s} s(c, s)
// (the max over an empty selection is 0), ties to the smaller concept id.
// Runs in O(k * sum of candidate doc-set sizes).
inline KnowledgeSubgraph select_subgraph(const CandidateConceptSet& cands,
                                         const QuerySpec& spec) {
  const double lambda = spec.lambda;
  if (!(lambda > 0.0 && lambda < 1.0))
    throw Error(Error::Kind::kInvalidArgument, "lambda must lie in (0, 1)");
  if (spec.subgraph_size < 1)
    throw Error(Error::Kind::kInvalidArgument, "k must be >= 1");

  const std::unordered_set<std::string_view> excluded(spec.excluded.begin(),
                                                      spec.excluded.end());
  std::vector<const CandidateConcept*> seeds;
  std::unordered_set<std::string_view> seeded;
  for (const auto& id : spec.forced_include) {
    if (excluded.contains(id))
      throw Error(Error::Kind::kInvalidArgument,
                  "concept " + id + " is both included and excluded");
    if (!seeded.insert(id).second) continue;
    const CandidateConcept* c = cands.find(id);
    if (c == nullptr)
      throw Error(Error::Kind::kForcedNotCandidate,
                  "included concept " + id + " is not a candidate");
    seeds.push_back(c);
  }

  std::vector<const CandidateConcept*> pool;
  DocOrdinal max_doc = 0;
  for (const auto& c : cands.concepts) {
    if (!c.doc_set.empty()) max_doc = std::max(max_doc, c.doc_set.back());
    if (!excluded.contains(c.concept_id) && !seeded.contains(c.concept_id))
      pool.push_back(&c);
  }

  KnowledgeSubgraph out;
  out.total_docs = cands.total_docs;
  auto take = [&](const CandidateConcept& c, std::optional<double> score) {
    out.concepts.push_back(
        {c.ordinal, c.concept_id, c.relevance(), score, c.doc_set});
  };

  // coverage[i] = max co-occurrence of pool[i] with anything selected so far.
  std::vector<std::size_t> coverage(pool.size(), 0);
  std::vector<char> alive(pool.size(), 1);
  std::vector<char> marked(static_cast<std::size_t>(max_doc) + 1, 0);
  auto absorb = [&](const CandidateConcept& chosen) {
    for (DocOrdinal d : chosen.doc_set) marked[d] = 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!alive[i]) continue;
      std::size_t s = 0;
      for (DocOrdinal d : pool[i]->doc_set) s += marked[d];
      coverage[i] = std::max(coverage[i], s);
    }
    for (DocOrdinal d : chosen.doc_set) marked[d] = 0;
  };

  for (const CandidateConcept* s : seeds) {
    take(*s, std::nullopt);
    absorb(*s);
  }

  std::size_t remaining = pool.size();
  while (out.concepts.size() < spec.subgraph_size && remaining > 0) {
    std::size_t best = pool.size();
    double best_score = -std::numeric_limits<double>::infinity();
    // pool is ordered by concept id, so a strict comparison keeps the
    // smallest id among equal scores.
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!alive[i]) continue;
      const double score =
          lambda * static_cast<double>(pool[i]->relevance()) -
          (1.0 - lambda) * static_cast<double>(coverage[i]);
      if (best == pool.size() || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    alive[best] = 0;
    --remaining;
    take(*pool[best], best_score);
    if (out.concepts.size() < spec.subgraph_size && remaining > 0)
      absorb(*pool[best]);
  }

  const std::size_t k = out.concepts.size();
  out.cooccurrence.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      out.cooccurrence[i][j] = out.cooccurrence[j][i] = intersection_size(
          out.concepts[i].doc_set, out.concepts[j].doc_set);
  return out;
}

}  // namespace grafs
