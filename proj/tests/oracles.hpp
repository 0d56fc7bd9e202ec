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

// Brute-force reference implementations. They share no code with the
// library paths they check beyond the tokenizer.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "grafs/query.hpp"
#include "grafs/text.hpp"

namespace grafs::oracle {

using IdSet = std::set<std::string>;

inline std::size_t common(const IdSet& a, const IdSet& b) {
  std::size_t n = 0;
  for (const auto& x : a) n += b.count(x);
  return n;
}

// ---- annotation ----------------------------------------------------------

struct SimpleMention {
  std::string concept_id;
  std::size_t start = 0, end = 0;
  friend bool operator==(const SimpleMention&, const SimpleMention&) = default;
};

// At every position tries all surface forms from longest to shortest.
inline std::vector<SimpleMention> annotate(
    const std::vector<std::string>& tokens,
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        forms) {
  auto sorted = forms;
  std::stable_sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
    return a.second.size() > b.second.size();
  });
  std::vector<SimpleMention> out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    bool hit = false;
    for (const auto& [id, seq] : sorted) {
      if (pos + seq.size() > tokens.size()) continue;
      if (std::equal(seq.begin(), seq.end(), tokens.begin() + pos)) {
        out.push_back({id, pos, pos + seq.size()});
        pos += seq.size();
        hit = true;
        break;
      }
    }
    if (!hit) ++pos;
  }
  return out;
}

// ---- Boolean evaluation -----------------------------------------------------

struct DocTokens {
  std::vector<std::string> title, text;
};

inline std::size_t occurrences(const std::vector<std::string>& field,
                               const std::vector<std::string>& seq) {
  std::size_t n = 0;
  if (seq.empty() || field.size() < seq.size()) return 0;
  for (std::size_t i = 0; i + seq.size() <= field.size(); ++i)
    if (std::equal(seq.begin(), seq.end(), field.begin() + i)) ++n;
  return n;
}

inline std::size_t leaf_count(const DocTokens& d, const QueryNode& leaf) {
  return occurrences(d.title, leaf.tokens) + occurrences(d.text, leaf.tokens);
}

inline bool satisfies(const DocTokens& d, const QueryNode& n) {
  switch (n.kind) {
    case QueryNode::Kind::kTerm:
    case QueryNode::Kind::kPhrase:
      return leaf_count(d, n) > 0;
    case QueryNode::Kind::kNot:
      return !satisfies(d, n.children[0]);
    case QueryNode::Kind::kAnd:
      for (const auto& c : n.children)
        if (!satisfies(d, c)) return false;
      return true;
    case QueryNode::Kind::kOr:
      for (const auto& c : n.children)
        if (satisfies(d, c)) return true;
      return false;
  }
  return false;
}

inline void positive(const QueryNode& n, std::vector<const QueryNode*>& out) {
  if (n.kind == QueryNode::Kind::kNot) return;
  if (n.kind == QueryNode::Kind::kTerm || n.kind == QueryNode::Kind::kPhrase) {
    out.push_back(&n);
    return;
  }
  for (const auto& c : n.children) positive(c, out);
}

// Document matches when the expression holds and one positive leaf occurs.
inline bool retrieved(const DocTokens& d, const QueryNode& ast) {
  if (!satisfies(d, ast)) return false;
  std::vector<const QueryNode*> leaves;
  positive(ast, leaves);
  for (const auto* l : leaves)
    if (leaf_count(d, *l) > 0) return true;
  return false;
}

// ---- relevance / coverage selection --------------------------------------

struct GreedyStep {
  std::string concept_id;
  double score = 0.0;
};

// Exhaustive rescoring at each step: every unselected candidate's
// r and max co-occurrence are recomputed from the raw document sets.
inline std::vector<GreedyStep> greedy_subgraph(
    const std::map<std::string, IdSet>& docs_of, std::size_t k,
    double lambda, const std::vector<std::string>& forced = {}) {
  std::vector<std::string> chosen = forced;
  std::vector<GreedyStep> steps;
  for (const auto& f : forced)
    steps.push_back({f, std::numeric_limits<double>::quiet_NaN()});
  while (chosen.size() < k) {
    std::optional<std::pair<double, std::string>> best;
    for (const auto& [id, docs] : docs_of) {
      if (std::find(chosen.begin(), chosen.end(), id) != chosen.end())
        continue;
      std::size_t max_s = 0;
      for (const auto& s : chosen)
        max_s = std::max(max_s, common(docs, docs_of.at(s)));
      const double score = lambda * static_cast<double>(docs.size()) -
                           (1.0 - lambda) * static_cast<double>(max_s);
      if (!best || score > best->first ||
          (score == best->first && id < best->second))
        best = std::make_pair(score, id);
    }
    if (!best) break;
    chosen.push_back(best->second);
    steps.push_back({best->second, best->first});
  }
  return steps;
}

// ---- complete linkage ------------------------------------------------------

struct Merge {
  IdSet left, right;
  double height = 0.0;
};

// Recomputes every cluster-pair linkage from leaf distances at each step.
inline std::vector<Merge> complete_linkage(
    const std::vector<std::string>& ids,
    const std::vector<std::vector<double>>& dist) {
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < ids.size(); ++i) at[ids[i]] = i;
  // Clusters carry (creation index, is merge) for child placement; leaves
  // and merges are counted separately.
  std::vector<std::pair<std::pair<std::size_t, bool>, IdSet>> live;
  for (std::size_t i = 0; i < ids.size(); ++i)
    live.push_back({{i, false}, {ids[i]}});
  std::size_t next = 0;
  std::vector<Merge> merges;
  while (live.size() > 1) {
    std::optional<std::tuple<double, std::string, std::string, std::size_t,
                             std::size_t>>
        best;
    for (std::size_t x = 0; x < live.size(); ++x) {
      for (std::size_t y = x + 1; y < live.size(); ++y) {
        double link = 0.0;
        for (const auto& a : live[x].second)
          for (const auto& b : live[y].second)
            link = std::max(link, dist[at[a]][at[b]]);
        std::string lo = *live[x].second.begin();
        std::string hi = *live[y].second.begin();
        if (hi < lo) std::swap(lo, hi);
        auto cand = std::make_tuple(link, lo, hi, x, y);
        if (!best || std::tie(link, lo, hi) < std::tie(std::get<0>(*best),
                                                      std::get<1>(*best),
                                                      std::get<2>(*best)))
          best = cand;
      }
    }
    auto [h, lo, hi, x, y] = *best;
    auto& cx = live[x];
    auto& cy = live[y];
    Merge m;
    m.height = h;
    m.left = cx.first < cy.first ? cx.second : cy.second;
    m.right = cx.first < cy.first ? cy.second : cx.second;
    IdSet merged = cx.second;
    merged.insert(cy.second.begin(), cy.second.end());
    merges.push_back(m);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(y));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(x));
    live.push_back({{next++, true}, std::move(merged)});
  }
  return merges;
}

// ---- sentence MMR -----------------------------------------------------------

struct OracleSentence {
  std::string doc_id;
  int field = 1;
  std::size_t char_start = 0;
  std::string text;
};

inline double tfidf_cosine(const std::map<std::string, double>& a,
                           const std::map<std::string, double>& b,
                           const std::map<std::string, double>& idf) {
  std::set<std::string> vocab;
  for (auto& [t, _] : a) vocab.insert(t);
  for (auto& [t, _] : b) vocab.insert(t);
  double dot = 0, na = 0, nb = 0;
  for (const auto& t : vocab) {
    const double wa = (a.count(t) ? a.at(t) : 0.0) * idf.at(t);
    const double wb = (b.count(t) ? b.at(t) : 0.0) * idf.at(t);
    dot += wa * wb;
    na += wa * wa;
    nb += wb * wb;
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline std::map<std::string, double> counts(
    const std::vector<std::string>& tokens) {
  std::map<std::string, double> c;
  for (const auto& t : tokens) c[t] += 1.0;
  return c;
}

// Greedy MMR with scores rescored from scratch at every step. Scores within
// tol count as ties and resolve by (doc_id, field, char_start).
inline std::vector<std::size_t> mmr(const std::vector<OracleSentence>& cands,
                                    const std::vector<std::string>& query,
                                    std::size_t m, double lambda,
                                    double tol = 1e-12) {
  std::vector<std::map<std::string, double>> bags;
  for (const auto& s : cands) bags.push_back(counts(token_strings(s.text)));
  const auto qbag = counts(query);
  std::map<std::string, double> df;
  for (const auto& b : bags)
    for (auto& [t, _] : b) df[t] += 1;
  for (auto& [t, _] : qbag) df[t] += 1;
  const double n = static_cast<double>(cands.size() + 1);
  std::map<std::string, double> idf;
  for (auto& [t, d] : df) idf[t] = std::log((n + 1) / (d + 1)) + 1;

  std::vector<std::size_t> picked;
  while (picked.size() < m && picked.size() < cands.size()) {
    std::optional<std::size_t> best;
    double best_score = 0;
    bool best_dup = true;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (std::find(picked.begin(), picked.end(), i) != picked.end()) continue;
      double red = 0;
      bool dup = false;
      for (std::size_t p : picked) {
        red = std::max(red, bags[i] == bags[p] ? 1.0
                                               : tfidf_cosine(bags[i], bags[p], idf));
        dup = dup || bags[i] == bags[p];
      }
      const double score =
          lambda * tfidf_cosine(bags[i], qbag, idf) - (1 - lambda) * red;
      auto key = [&](std::size_t j) {
        return std::tie(cands[j].doc_id, cands[j].field, cands[j].char_start);
      };
      bool better;
      if (!best) {
        better = true;
      } else if (dup != best_dup) {
        better = !dup;
      } else if (std::abs(score - best_score) <= tol) {
        better = key(i) < key(*best);
      } else {
        better = score > best_score;
      }
      if (better) {
        best = i;
        best_score = score;
        best_dup = dup;
      }
    }
    picked.push_back(*best);
  }
  return picked;
}

}  // namespace grafs::oracle
