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
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grafs/grafs.hpp"

#ifndef GRAFS_TEST_DATA
#define GRAFS_TEST_DATA "tests/data"
#endif

namespace grafs::testing {

inline std::string data_path(const std::string& name) {
  return std::string(GRAFS_TEST_DATA) + "/" + name;
}

inline Index fix1_index() {
  return build_index(load_corpus(data_path("fix1_corpus.jsonl")),
                     load_vocabulary(data_path("fix1_vocab.jsonl")));
}

inline Vocabulary make_vocab(
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        entries) {
  Vocabulary v;
  for (const auto& [id, names] : entries) {
    ConceptEntry e;
    e.concept_id = id;
    e.preferred_name = names.front();
    e.synonyms.assign(names.begin() + 1, names.end());
    v.add(std::move(e));
  }
  return v;
}

inline std::vector<std::string> ids_of(const Index& idx,
                                       const std::vector<DocOrdinal>& docs) {
  std::vector<std::string> out;
  for (DocOrdinal d : docs) out.push_back(idx.doc(d).doc.id);
  return out;
}

inline std::vector<DocOrdinal> all_docs(const Index& idx) {
  std::vector<DocOrdinal> out;
  for (DocOrdinal d = 0; d < idx.doc_count(); ++d) out.push_back(d);
  return out;
}

// Random corpus where document i mentions the concepts in sets[i]. Concept j
// is the single token "k<j>" and every document contains the token "common".
struct ConceptCorpus {
  std::vector<std::set<int>> sets;
  int concepts = 0;

  static std::string concept_id(int j) {
    return "C" + std::string(j < 10 ? "0" : "") + std::to_string(j);
  }

  Index build() const {
    Vocabulary v;
    for (int j = 0; j < concepts; ++j) {
      ConceptEntry e;
      e.concept_id = concept_id(j);
      e.preferred_name = "k" + std::to_string(j);
      v.add(std::move(e));
    }
    std::vector<Document> docs;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::string text = "common filler";
      for (int c : sets[i]) text += " k" + std::to_string(c);
      docs.push_back({"doc" + std::string(i < 10 ? "0" : "") +
                          std::to_string(i),
                      "", text + "."});
    }
    return build_index(std::move(docs), std::move(v));
  }

  static ConceptCorpus random(std::mt19937& rng, int max_docs,
                              int max_concepts, double density) {
    ConceptCorpus c;
    c.concepts = std::uniform_int_distribution<int>(1, max_concepts)(rng);
    const int docs = std::uniform_int_distribution<int>(1, max_docs)(rng);
    std::bernoulli_distribution coin(density);
    for (int i = 0; i < docs; ++i) {
      std::set<int> s;
      for (int j = 0; j < c.concepts; ++j)
        if (coin(rng)) s.insert(j);
      c.sets.push_back(std::move(s));
    }
    return c;
  }
};

}  // namespace grafs::testing
