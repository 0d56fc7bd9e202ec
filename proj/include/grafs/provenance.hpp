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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "grafs/corpus.hpp"
#include "grafs/index.hpp"
#include "grafs/subgraph.hpp"
#include "grafs/text.hpp"

namespace grafs {

inline constexpr std::size_t kDefaultProvenanceCount = 3;
inline constexpr double kDefaultProvenanceLambda = 0.5;

// Sentence scores closer than this are ties; cosines of mathematically equal
// vectors can differ in the last bits depending on summation order.
inline constexpr double kScoreTolerance = 1e-12;

// Token multiset with raw counts, ordered by token.
using TokenBag = std::map<std::string, std::size_t, std::less<>>;

inline TokenBag make_bag(std::span<const std::string> tokens) {
  TokenBag bag;
  for (const auto& t : tokens) ++bag[t];
  return bag;
}

inline TokenBag make_bag(std::string_view text) {
  TokenBag bag;
  for (auto& t : tokenize(text)) ++bag[t.text];
  return bag;
}

// idf(t) = ln((N + 1) / (df(t) + 1)) + 1 over a small sentence universe.
class IdfTable {
 public:
  IdfTable() = default;

  explicit IdfTable(std::span<const TokenBag> universe)
      : sentence_count_(universe.size()) {
    std::unordered_map<std::string, std::size_t> df;
    for (const auto& bag : universe)
      for (const auto& [tok, _] : bag) ++df[tok];
    for (const auto& [tok, n] : df) idf_.emplace(tok, compute(n));
  }

  double idf(std::string_view token) const {
    auto it = idf_.find(std::string(token));
    return it == idf_.end() ? compute(0) : it->second;
  }

  std::size_t sentence_count() const { return sentence_count_; }

 private:
  double compute(std::size_t df) const {
    return std::log(static_cast<double>(sentence_count_ + 1) /
                    static_cast<double>(df + 1)) +
           1.0;
  }

  std::size_t sentence_count_ = 0;
  std::unordered_map<std::string, double> idf_;
};

// Unit-length TFIDF vector, entries ordered by token.
struct WeightVector {
  std::vector<std::pair<std::string, double>> entries;
  bool zero = true;
};

inline WeightVector weigh(const TokenBag& bag, const IdfTable& idf) {
  WeightVector v;
  double norm = 0.0;
  for (const auto& [tok, tf] : bag) {
    const double w = static_cast<double>(tf) * idf.idf(tok);
    v.entries.emplace_back(tok, w);
    norm += w * w;
  }
  if (norm > 0.0) {
    v.zero = false;
    const double len = std::sqrt(norm);
    for (auto& e : v.entries) e.second /= len;
  }
  return v;
}

inline double cosine(const WeightVector& a, const WeightVector& b) {
  if (a.zero || b.zero) return 0.0;
  double dot = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot, 0.0, 1.0);
}

// Cosine of the TFIDF vectors of two token multisets; 0 when either is empty.
inline double similarity(const TokenBag& a, const TokenBag& b,
                         const IdfTable& idf) {
  if (a == b && !a.empty()) return 1.0;
  return cosine(weigh(a, idf), weigh(b, idf));
}

struct ProvenanceSentence {
  std::string doc_id;
  Field field = Field::kText;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string text;
  double relevance_score = 0.0;  // v(s, q)
  double mmr_score = 0.0;        // objective value when picked
};

// Sentences of D_q containing a mention of the concept, ordered by corpus
// position then sentence position. The title counts as one sentence.
inline std::vector<Sentence> candidate_sentences(
    const Index& index, std::string_view concept_id,
    std::span<const DocOrdinal> dq) {
  const ConceptOrdinal c = index.vocabulary().ordinal(concept_id);
  std::vector<Sentence> out;
  for (DocOrdinal d : sorted_docs(dq)) {
    const IndexedDocument& doc = index.doc(d);
    if (!std::binary_search(doc.concepts.begin(), doc.concepts.end(), c))
      continue;
    for (Sentence& s : document_sentences(doc.doc)) {
      const bool hit = std::any_of(
          doc.mentions.begin(), doc.mentions.end(),
          [&](const ConceptMention& m) {
            return m.ordinal == c && m.field == s.field &&
                   m.char_start >= s.char_start && m.char_end <= s.char_end;
          });
      if (hit) out.push_back(std::move(s));
    }
  }
  return out;
}

// Greedy MMR over candidate sentences:
//   next = argmax  lambda * v(s, q) - (1 - lambda) * max_{picked p} v(s, p)
// with the empty max taken as 0. Ties (within kScoreTolerance) go to the
// smaller (doc id, field, offset). A sentence whose token multiset equals one already picked is only
// eligible once no other candidate is left.
inline std::vector<ProvenanceSentence> select_from_candidates(
    std::vector<Sentence> candidates, std::span<const std::string> query_tokens,
    std::size_t m = kDefaultProvenanceCount,
    double lambda = kDefaultProvenanceLambda) {
  std::vector<ProvenanceSentence> out;
  if (m == 0 || candidates.empty()) return out;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Sentence& a, const Sentence& b) {
                     return std::tie(a.doc_id, a.field, a.char_start) <
                            std::tie(b.doc_id, b.field, b.char_start);
                   });

  std::vector<TokenBag> bags;
  bags.reserve(candidates.size() + 1);
  for (const auto& s : candidates) bags.push_back(make_bag(s.text));
  const TokenBag query = make_bag(query_tokens);
  bags.push_back(query);
  const IdfTable idf(bags);
  bags.pop_back();

  const WeightVector qv = weigh(query, idf);
  std::vector<WeightVector> vecs;
  std::vector<double> relevance;
  for (const auto& bag : bags) {
    vecs.push_back(weigh(bag, idf));
    relevance.push_back(cosine(vecs.back(), qv));
  }

  const std::size_t n = candidates.size();
  std::vector<double> redundancy(n, 0.0);
  std::vector<char> picked(n, 0);
  std::vector<char> duplicate(n, 0);
  while (out.size() < m && out.size() < n) {
    std::size_t best = n;
    double best_score = 0.0;
    bool best_dup = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (picked[i]) continue;
      const double score =
          lambda * relevance[i] - (1.0 - lambda) * redundancy[i];
      const bool dup = duplicate[i] != 0;
      if (best == n || (best_dup && !dup) ||
          (dup == best_dup && score > best_score + kScoreTolerance)) {
        best = i;
        best_score = score;
        best_dup = dup;
      }
    }
    picked[best] = 1;
    const Sentence& s = candidates[best];
    out.push_back({s.doc_id, s.field, s.char_start, s.char_end, s.text,
                   relevance[best], best_score});
    for (std::size_t i = 0; i < n; ++i) {
      if (picked[i]) continue;
      const double sim =
          bags[i] == bags[best] ? 1.0 : cosine(vecs[i], vecs[best]);
      redundancy[i] = std::max(redundancy[i], sim);
      if (bags[i] == bags[best]) duplicate[i] = 1;
    }
  }
  return out;
}

inline std::vector<ProvenanceSentence> select_sentences(
    const Index& index, std::string_view concept_id,
    std::span<const std::string> query_tokens, std::span<const DocOrdinal> dq,
    std::size_t m = kDefaultProvenanceCount,
    double lambda = kDefaultProvenanceLambda) {
  return select_from_candidates(candidate_sentences(index, concept_id, dq),
                                query_tokens, m, lambda);
}

// The single most related sentence, used for hover tooltips.
inline std::optional<ProvenanceSentence> tooltip_sentence(
    const Index& index, std::string_view concept_id,
    std::span<const std::string> query_tokens, std::span<const DocOrdinal> dq) {
  auto picked = select_sentences(index, concept_id, query_tokens, dq, 1);
  if (picked.empty()) return std::nullopt;
  return std::move(picked.front());
}

}  // namespace grafs
