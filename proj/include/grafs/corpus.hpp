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
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "grafs/error.hpp"
#include "grafs/text.hpp"
#include "json.hpp"

namespace grafs {

using ConceptOrdinal = std::uint32_t;

enum class Field : std::uint8_t { kTitle = 0, kText = 1 };

inline const char* field_name(Field f) {
  return f == Field::kTitle ? "title" : "text";
}

struct Document {
  std::string id;
  std::string title;
  std::string text;

  std::string_view field_text(Field f) const {
    return f == Field::kTitle ? title : text;
  }
};

struct ConceptEntry {
  std::string concept_id;
  std::string preferred_name;
  std::vector<std::string> synonyms;
  std::string semantic_type;
};

struct ConceptMention {
  std::string concept_id;
  ConceptOrdinal ordinal = 0;
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  Field field = Field::kText;

  friend bool operator==(const ConceptMention&, const ConceptMention&) =
      default;
};

struct Sentence {
  std::string doc_id;
  Field field = Field::kText;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string text;
};

// Concept dictionary plus a prefix tree over the case-folded token sequences
// of every surface form. Immutable once built; safe to share across threads.
class Vocabulary {
 public:
  Vocabulary() { nodes_.emplace_back(); }

  // Adds an entry; the preferred name is matched like any synonym. Throws
  // kDuplicateId for a repeated concept id, kParse for a surface form with no
  // tokens and kAmbiguousSurface when a token sequence already belongs to a
  // different concept.
  void add(ConceptEntry entry) {
    if (entry.concept_id.empty())
      throw Error(Error::Kind::kParse, "empty concept_id");
    if (by_id_.contains(entry.concept_id))
      throw Error(Error::Kind::kDuplicateId,
                  "duplicate concept_id: " + entry.concept_id);
    const auto ordinal = static_cast<ConceptOrdinal>(entries_.size());

    std::vector<std::vector<std::string>> forms;
    forms.push_back(token_strings(entry.preferred_name));
    for (const auto& s : entry.synonyms) forms.push_back(token_strings(s));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i].empty()) {
        const std::string& raw =
            i == 0 ? entry.preferred_name : entry.synonyms[i - 1];
        throw Error(Error::Kind::kParse, "surface form \"" + raw +
                                             "\" of " + entry.concept_id +
                                             " has no tokens");
      }
      if (auto owner = lookup(forms[i]); owner && *owner != ordinal) {
        throw Error(Error::Kind::kAmbiguousSurface,
                    "surface form \"" + join(forms[i]) + "\" of " +
                        entry.concept_id + " already belongs to " +
                        entries_[*owner].concept_id);
      }
    }
    for (const auto& form : forms) insert(form, ordinal);
    by_id_.emplace(entry.concept_id, ordinal);
    entries_.push_back(std::move(entry));
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ConceptEntry& entry(ConceptOrdinal c) const { return entries_[c]; }
  const std::vector<ConceptEntry>& entries() const { return entries_; }

  std::optional<ConceptOrdinal> find(std::string_view concept_id) const {
    auto it = by_id_.find(std::string(concept_id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  ConceptOrdinal ordinal(std::string_view concept_id) const {
    if (auto c = find(concept_id)) return *c;
    throw UnknownConceptError(std::string(concept_id));
  }

  // Exact lookup of a complete token sequence.
  std::optional<ConceptOrdinal> lookup(
      std::span<const std::string> tokens) const {
    std::uint32_t node = 0;
    for (const auto& t : tokens) {
      auto it = nodes_[node].next.find(t);
      if (it == nodes_[node].next.end()) return std::nullopt;
      node = it->second;
    }
    if (nodes_[node].owner < 0) return std::nullopt;
    return static_cast<ConceptOrdinal>(nodes_[node].owner);
  }

  struct Match {
    std::size_t length = 0;
    ConceptOrdinal ordinal = 0;
  };

  // Longest surface form starting at tokens[pos], if any.
  std::optional<Match> longest_match(std::span<const Token> tokens,
                                     std::size_t pos) const {
    std::optional<Match> best;
    std::uint32_t node = 0;
    for (std::size_t i = pos; i < tokens.size(); ++i) {
      auto it = nodes_[node].next.find(tokens[i].text);
      if (it == nodes_[node].next.end()) break;
      node = it->second;
      if (nodes_[node].owner >= 0)
        best = Match{i - pos + 1,
                     static_cast<ConceptOrdinal>(nodes_[node].owner)};
    }
    return best;
  }

 private:
  struct Node {
    std::unordered_map<std::string, std::uint32_t> next;
    std::int64_t owner = -1;
  };

  static std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
      if (!out.empty()) out.push_back(' ');
      out += t;
    }
    return out;
  }

  void insert(const std::vector<std::string>& tokens, ConceptOrdinal c) {
    std::uint32_t node = 0;
    for (const auto& t : tokens) {
      auto it = nodes_[node].next.find(t);
      if (it != nodes_[node].next.end()) {
        node = it->second;
        continue;
      }
      const auto child = static_cast<std::uint32_t>(nodes_.size());
      nodes_[node].next.emplace(t, child);
      nodes_.emplace_back();
      node = child;
    }
    nodes_[node].owner = c;
  }

  std::vector<ConceptEntry> entries_;
  std::unordered_map<std::string, ConceptOrdinal> by_id_;
  std::vector<Node> nodes_;
};

// Greedy left-to-right longest match over one field's tokens.
inline std::vector<ConceptMention> annotate_tokens(
    std::span<const Token> tokens, const Vocabulary& vocab, Field field) {
  std::vector<ConceptMention> mentions;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    auto match = vocab.longest_match(tokens, pos);
    if (!match) {
      ++pos;
      continue;
    }
    const std::size_t end = pos + match->length;
    mentions.push_back(ConceptMention{
        vocab.entry(match->ordinal).concept_id, match->ordinal, pos, end,
        tokens[pos].char_start, tokens[end - 1].char_end, field});
    pos = end;
  }
  return mentions;
}

// Mentions of the title (field kTitle) followed by those of the text.
inline std::vector<ConceptMention> annotate_document(const Document& doc,
                                                     const Vocabulary& vocab) {
  auto mentions = annotate_tokens(tokenize(doc.title), vocab, Field::kTitle);
  auto body = annotate_tokens(tokenize(doc.text), vocab, Field::kText);
  mentions.insert(mentions.end(), std::make_move_iterator(body.begin()),
                  std::make_move_iterator(body.end()));
  return mentions;
}

// The trimmed title counts as one sentence, followed by the text's sentences.
inline std::vector<Sentence> document_sentences(const Document& doc) {
  std::vector<Sentence> out;
  const TextSpan title = trim_span(doc.title, 0, doc.title.size());
  if (title.begin < title.end) {
    out.push_back(Sentence{doc.id, Field::kTitle, title.begin, title.end,
                           doc.title.substr(title.begin, title.size())});
  }
  for (const TextSpan& s : segment_sentences(doc.text)) {
    out.push_back(Sentence{doc.id, Field::kText, s.begin, s.end,
                           doc.text.substr(s.begin, s.size())});
  }
  return out;
}

namespace detail {

inline bool blank(std::string_view line) {
  for (char c : line)
    if (!is_space(c)) return false;
  return true;
}

inline nlohmann::json parse_json_line(const std::string& line,
                                      std::size_t line_no) {
  try {
    auto j = nlohmann::json::parse(line);
    if (!j.is_object()) throw ParseError(line_no, "expected a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(line_no, e.what());
  }
}

inline std::string string_field(const nlohmann::json& j, const char* key,
                                std::size_t line_no, bool required) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (required)
      throw ParseError(line_no, std::string("missing field \"") + key + "\"");
    return {};
  }
  if (!it->is_string())
    throw ParseError(line_no, std::string("field \"") + key +
                                  "\" must be a string");
  return it->get<std::string>();
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::kIo, "cannot open " + path);
  return in;
}

}  // namespace detail

// JSON-Lines, one {"id","title","text"} object per line. Blank lines are
// skipped; line numbers in errors count them.
inline std::vector<Document> parse_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    const auto j = detail::parse_json_line(line, line_no);
    Document doc{detail::string_field(j, "id", line_no, true),
                 detail::string_field(j, "title", line_no, false),
                 detail::string_field(j, "text", line_no, false)};
    if (doc.id.empty()) throw ParseError(line_no, "empty document id");
    if (doc.title.empty() && doc.text.empty())
      throw ParseError(line_no, "document " + doc.id + " has no content");
    if (!seen.insert(doc.id).second)
      throw Error(Error::Kind::kDuplicateId, "line " + std::to_string(line_no) +
                                                 ": duplicate document id " +
                                                 doc.id);
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline std::vector<Document> load_corpus(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_corpus(in);
}

inline Vocabulary parse_vocabulary(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    const auto j = detail::parse_json_line(line, line_no);
    ConceptEntry entry;
    entry.concept_id = detail::string_field(j, "concept_id", line_no, true);
    entry.preferred_name =
        detail::string_field(j, "preferred_name", line_no, true);
    entry.semantic_type =
        detail::string_field(j, "semantic_type", line_no, false);
    if (auto it = j.find("synonyms"); it != j.end()) {
      if (!it->is_array())
        throw ParseError(line_no, "field \"synonyms\" must be an array");
      for (const auto& s : *it) {
        if (!s.is_string())
          throw ParseError(line_no, "synonyms must be strings");
        entry.synonyms.push_back(s.get<std::string>());
      }
    }
    try {
      vocab.add(std::move(entry));
    } catch (const Error& e) {
      if (e.kind() == Error::Kind::kParse) throw ParseError(line_no, e.what());
      throw Error(e.kind(),
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return vocab;
}

inline Vocabulary load_vocabulary(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_vocabulary(in);
}

}  // namespace grafs
