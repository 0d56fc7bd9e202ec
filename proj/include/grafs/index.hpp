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
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grafs/corpus.hpp"
#include "grafs/error.hpp"
#include "grafs/query.hpp"
#include "grafs/text.hpp"

namespace grafs {

using DocOrdinal = std::uint32_t;

// Sorted, duplicate-free list of document ordinals.
using DocSet = std::vector<DocOrdinal>;

inline DocSet intersect(std::span<const DocOrdinal> a,
                        std::span<const DocOrdinal> b) {
  DocSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline DocSet unite(std::span<const DocOrdinal> a,
                    std::span<const DocOrdinal> b) {
  DocSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(std::span<const DocOrdinal> a,
                                     std::span<const DocOrdinal> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

inline double bm25_idf(std::size_t doc_count, std::size_t df) {
  const double n = static_cast<double>(doc_count);
  const double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

inline double bm25_term(double tf, double idf, double doc_length,
                        double avg_doc_length, Bm25Params p = {}) {
  const double norm =
      avg_doc_length > 0.0 ? doc_length / avg_doc_length : 1.0;
  return idf * tf * (p.k1 + 1.0) / (tf + p.k1 * (1.0 - p.b + p.b * norm));
}

struct IndexedDocument {
  Document doc;
  std::uint32_t title_tokens = 0;
  std::uint32_t text_tokens = 0;
  std::vector<ConceptMention> mentions;
  std::vector<ConceptOrdinal> concepts;  // sorted, distinct

  std::uint32_t length() const { return title_tokens + text_tokens; }
};

// Positional postings for one token in CSR form. Title tokens occupy
// positions [0, title_tokens); text tokens start at title_tokens + 1 so that
// no phrase can straddle the two fields.
struct TermPostings {
  std::vector<DocOrdinal> docs;
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> positions;

  std::size_t df() const { return docs.size(); }
  std::uint32_t tf(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
  std::span<const std::uint32_t> positions_of(std::size_t i) const {
    return std::span<const std::uint32_t>(positions)
        .subspan(offsets[i], offsets[i + 1] - offsets[i]);
  }
};

struct SearchHit {
  std::string doc_id;
  DocOrdinal doc = 0;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// Occurrence count of a leaf (term or phrase) per matching document.
struct LeafMatches {
  DocSet docs;
  std::vector<std::uint32_t> freq;
};

inline constexpr char kIndexMagic[8] = {'G', 'R', 'A', 'F', 'S', 'I', 'D', 'X'};
inline constexpr std::uint32_t kIndexVersion = 1;

namespace detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void raw(std::string_view s) { buf_.append(s); }

  // Appends a u64 length followed by the section body.
  void section(const ByteWriter& body) {
    u64(body.buf_.size());
    buf_.append(body.buf_);
  }

  const std::string& bytes() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= std::uint32_t(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= std::uint64_t(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  ByteReader section() {
    const std::uint64_t n = u64();
    if (n > data_.size() - pos_) corrupt("section exceeds file size");
    return ByteReader(raw(static_cast<std::size_t>(n)));
  }
  bool done() const { return pos_ == data_.size(); }

  [[noreturn]] static void corrupt(const std::string& what) {
    throw Error(Error::Kind::kIndexFormat, "corrupt index: " + what);
  }

 private:
  void need(std::size_t n) const {
    if (n > data_.size() - pos_) corrupt("truncated data");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Immutable inverted index: term postings with positions, concept postings
// and the document table. Readers may share one instance across threads.
class Index {
 public:
  Index() = default;

  // Annotates and indexes docs. threads > 1 splits annotation across worker
  // threads; the result does not depend on the thread count.
  static Index build(std::vector<Document> docs, Vocabulary vocab,
                     unsigned threads = 1) {
    Index idx;
    idx.vocab_ = std::move(vocab);
    const std::size_t n = docs.size();
    idx.docs_.resize(n);

    std::vector<std::vector<Token>> title_tokens(n), text_tokens(n);
    auto work = [&](std::size_t begin, std::size_t stride) {
      for (std::size_t i = begin; i < n; i += stride) {
        IndexedDocument& d = idx.docs_[i];
        d.doc = std::move(docs[i]);
        title_tokens[i] = tokenize(d.doc.title);
        text_tokens[i] = tokenize(d.doc.text);
        d.title_tokens = static_cast<std::uint32_t>(title_tokens[i].size());
        d.text_tokens = static_cast<std::uint32_t>(text_tokens[i].size());
        d.mentions = annotate_tokens(title_tokens[i], idx.vocab_, Field::kTitle);
        auto body = annotate_tokens(text_tokens[i], idx.vocab_, Field::kText);
        d.mentions.insert(d.mentions.end(),
                          std::make_move_iterator(body.begin()),
                          std::make_move_iterator(body.end()));
      }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
      for (auto& th : pool) th.join();
    }

    std::map<std::string, TermPostings, std::less<>> terms;
    std::uint64_t total_tokens = 0;
    for (std::size_t i = 0; i < n; ++i) {
      IndexedDocument& d = idx.docs_[i];
      if (!idx.by_id_.emplace(d.doc.id, static_cast<DocOrdinal>(i)).second)
        throw Error(Error::Kind::kDuplicateId,
                    "duplicate document id " + d.doc.id);
      total_tokens += d.length();

      std::map<std::string_view, std::vector<std::uint32_t>> local;
      for (std::size_t t = 0; t < title_tokens[i].size(); ++t)
        local[title_tokens[i][t].text].push_back(static_cast<std::uint32_t>(t));
      for (std::size_t t = 0; t < text_tokens[i].size(); ++t)
        local[text_tokens[i][t].text].push_back(
            static_cast<std::uint32_t>(d.title_tokens + 1 + t));
      for (auto& [tok, pos] : local) {
        auto it = terms.find(tok);
        if (it == terms.end()) it = terms.emplace(std::string(tok), TermPostings{}).first;
        TermPostings& p = it->second;
        p.docs.push_back(static_cast<DocOrdinal>(i));
        p.positions.insert(p.positions.end(), pos.begin(), pos.end());
        p.offsets.push_back(static_cast<std::uint32_t>(p.positions.size()));
      }
    }
    idx.terms_ = std::move(terms);
    idx.avg_doc_length_ =
        n == 0 ? 0.0 : static_cast<double>(total_tokens) / static_cast<double>(n);
    idx.finish();
    return idx;
  }

  std::size_t doc_count() const { return docs_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  const Vocabulary& vocabulary() const { return vocab_; }

  const IndexedDocument& doc(DocOrdinal d) const { return docs_[d]; }

  std::optional<DocOrdinal> find_doc(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  const TermPostings* term(std::string_view token) const {
    auto it = terms_.find(token);
    return it == terms_.end() ? nullptr : &it->second;
  }

  std::size_t term_count() const { return terms_.size(); }

  // Documents with at least one mention of the concept.
  const DocSet& concept_postings(ConceptOrdinal c) const {
    return concept_postings_[c];
  }

  const DocSet& concept_documents(std::string_view concept_id) const {
    return concept_postings_[vocab_.ordinal(concept_id)];
  }

  // Hex digest of the serialized form; changes whenever the content does.
  const std::string& fingerprint() const { return fingerprint_; }

  // Occurrences of a term or phrase leaf.
  LeafMatches leaf_matches(const QueryNode& leaf) const {
    LeafMatches out;
    const auto& toks = leaf.tokens;
    if (toks.empty()) return out;
    std::vector<const TermPostings*> lists;
    for (const auto& t : toks) {
      const TermPostings* p = term(t);
      if (p == nullptr) return out;
      lists.push_back(p);
    }
    if (toks.size() == 1) {
      out.docs = lists[0]->docs;
      for (std::size_t i = 0; i < lists[0]->df(); ++i)
        out.freq.push_back(lists[0]->tf(i));
      return out;
    }
    // Walk the first token's docs and probe each follower with a cursor.
    std::vector<std::size_t> cursor(lists.size(), 0);
    for (std::size_t i = 0; i < lists[0]->df(); ++i) {
      const DocOrdinal d = lists[0]->docs[i];
      std::vector<std::span<const std::uint32_t>> pos(lists.size());
      pos[0] = lists[0]->positions_of(i);
      bool present = true;
      for (std::size_t k = 1; k < lists.size() && present; ++k) {
        const auto& docs = lists[k]->docs;
        auto& c = cursor[k];
        while (c < docs.size() && docs[c] < d) ++c;
        if (c == docs.size() || docs[c] != d) {
          present = false;
        } else {
          pos[k] = lists[k]->positions_of(c);
        }
      }
      if (!present) continue;
      std::uint32_t count = 0;
      for (std::uint32_t start : pos[0]) {
        bool ok = true;
        for (std::size_t k = 1; k < pos.size() && ok; ++k)
          ok = std::binary_search(pos[k].begin(), pos[k].end(),
                                  start + static_cast<std::uint32_t>(k));
        if (ok) ++count;
      }
      if (count > 0) {
        out.docs.push_back(d);
        out.freq.push_back(count);
      }
    }
    return out;
  }

  // Documents satisfying the Boolean expression (NOT complements against
  // the whole collection).
  DocSet evaluate(const QueryNode& n) const {
    switch (n.kind) {
      case QueryNode::Kind::kTerm:
      case QueryNode::Kind::kPhrase:
        return leaf_matches(n).docs;
      case QueryNode::Kind::kNot: {
        const DocSet inner = evaluate(n.children.front());
        DocSet out;
        std::size_t j = 0;
        for (DocOrdinal d = 0; d < docs_.size(); ++d) {
          if (j < inner.size() && inner[j] == d) {
            ++j;
          } else {
            out.push_back(d);
          }
        }
        return out;
      }
      case QueryNode::Kind::kAnd: {
        DocSet acc = evaluate(n.children.front());
        for (std::size_t i = 1; i < n.children.size() && !acc.empty(); ++i)
          acc = intersect(acc, evaluate(n.children[i]));
        return acc;
      }
      case QueryNode::Kind::kOr: {
        DocSet acc;
        for (const auto& c : n.children) acc = unite(acc, evaluate(c));
        return acc;
      }
    }
    return {};
  }

  // Boolean retrieval ranked by BM25 summed over the positive leaves found
  // in each document. Documents that satisfy the expression but contain no
  // positive leaf are not returned. Ties go to the smaller doc id.
  std::vector<SearchHit> search(const QueryAst& ast, std::size_t n,
                                Bm25Params params = {}) const {
    std::vector<SearchHit> hits;
    if (n == 0 || docs_.empty()) return hits;
    const DocSet matched = evaluate(ast);
    if (matched.empty()) return hits;

    std::vector<char> in_result(docs_.size(), 0);
    for (DocOrdinal d : matched) in_result[d] = 1;
    std::vector<double> score(docs_.size(), 0.0);
    std::vector<char> touched(docs_.size(), 0);
    for (const QueryNode* leaf : positive_leaves(ast)) {
      const LeafMatches m = leaf_matches(*leaf);
      const double idf = bm25_idf(docs_.size(), m.docs.size());
      for (std::size_t i = 0; i < m.docs.size(); ++i) {
        const DocOrdinal d = m.docs[i];
        if (!in_result[d]) continue;
        score[d] += bm25_term(m.freq[i], idf, docs_[d].length(),
                              avg_doc_length_, params);
        touched[d] = 1;
      }
    }
    for (DocOrdinal d : matched)
      if (touched[d]) hits.push_back({docs_[d].doc.id, d, score[d], 0});
    auto better = [](const SearchHit& a, const SearchHit& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.doc_id < b.doc_id;
    };
    if (hits.size() > n) {
      std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n),
                        hits.end(), better);
      hits.resize(n);
    } else {
      std::sort(hits.begin(), hits.end(), better);
    }
    for (std::size_t i = 0; i < hits.size(); ++i) hits[i].rank = i + 1;
    return hits;
  }

  // Full binary image, trailer checksum included.
  std::string serialize() const {
    detail::ByteWriter out;
    out.raw(std::string_view(kIndexMagic, sizeof kIndexMagic));
    out.u32(kIndexVersion);
    out.u64(docs_.size());
    out.f64(avg_doc_length_);

    detail::ByteWriter doc_table;
    doc_table.u64(docs_.size());
    for (const auto& d : docs_) {
      doc_table.str(d.doc.id);
      doc_table.str(d.doc.title);
      doc_table.str(d.doc.text);
      doc_table.u32(d.title_tokens);
      doc_table.u32(d.text_tokens);
      doc_table.u32(static_cast<std::uint32_t>(d.mentions.size()));
      for (const auto& m : d.mentions) {
        doc_table.u32(m.ordinal);
        doc_table.u32(static_cast<std::uint32_t>(m.token_start));
        doc_table.u32(static_cast<std::uint32_t>(m.token_end));
        doc_table.u32(static_cast<std::uint32_t>(m.char_start));
        doc_table.u32(static_cast<std::uint32_t>(m.char_end));
        doc_table.u8(static_cast<std::uint8_t>(m.field));
      }
    }
    out.section(doc_table);

    detail::ByteWriter term_section;
    term_section.u64(terms_.size());
    for (const auto& [tok, p] : terms_) {
      term_section.str(tok);
      term_section.u32(static_cast<std::uint32_t>(p.df()));
      for (std::size_t i = 0; i < p.df(); ++i) {
        term_section.u32(p.docs[i]);
        term_section.u32(p.tf(i));
        for (std::uint32_t pos : p.positions_of(i)) term_section.u32(pos);
      }
    }
    out.section(term_section);

    detail::ByteWriter concept_section;
    concept_section.u64(concept_postings_.size());
    for (const auto& list : concept_postings_) {
      concept_section.u32(static_cast<std::uint32_t>(list.size()));
      for (DocOrdinal d : list) concept_section.u32(d);
    }
    out.section(concept_section);

    detail::ByteWriter vocab_section;
    vocab_section.u64(vocab_.size());
    for (const auto& e : vocab_.entries()) {
      vocab_section.str(e.concept_id);
      vocab_section.str(e.preferred_name);
      vocab_section.str(e.semantic_type);
      vocab_section.u32(static_cast<std::uint32_t>(e.synonyms.size()));
      for (const auto& s : e.synonyms) vocab_section.str(s);
    }
    out.section(vocab_section);

    out.u64(detail::fnv1a64(out.bytes()));
    return out.take();
  }

  // Parses a serialized image. Throws kIndexFormat on bad magic, unknown
  // version, truncation or checksum mismatch; nothing is returned partially.
  static Index deserialize(std::string_view bytes) {
    constexpr std::size_t kHeader = 8 + 4 + 8 + 8;
    if (bytes.size() < 8 ||
        std::memcmp(bytes.data(), kIndexMagic, sizeof kIndexMagic) != 0)
      throw Error(Error::Kind::kIndexFormat, "bad magic: not a GRAFS index");
    if (bytes.size() < kHeader + 8)
      detail::ByteReader::corrupt("truncated header");
    detail::ByteReader header(bytes.substr(8, 4));
    const std::uint32_t version = header.u32();
    if (version != kIndexVersion)
      throw Error(Error::Kind::kIndexFormat,
                  "unsupported index version " + std::to_string(version));
    const std::string_view body = bytes.substr(0, bytes.size() - 8);
    detail::ByteReader trailer(bytes.substr(bytes.size() - 8));
    if (trailer.u64() != detail::fnv1a64(body))
      detail::ByteReader::corrupt("checksum mismatch");

    detail::ByteReader in(body.substr(12));
    Index idx;
    const std::uint64_t doc_count = in.u64();
    idx.avg_doc_length_ = in.f64();

    detail::ByteReader doc_in = in.section();
    detail::ByteReader term_in = in.section();
    detail::ByteReader concept_in = in.section();
    detail::ByteReader vocab_in = in.section();
    if (!in.done()) detail::ByteReader::corrupt("trailing bytes");

    // Mentions refer to the vocabulary, so its section is decoded first.

    const std::uint64_t entries = vocab_in.u64();
    for (std::uint64_t i = 0; i < entries; ++i) {
      ConceptEntry e;
      e.concept_id = vocab_in.str();
      e.preferred_name = vocab_in.str();
      e.semantic_type = vocab_in.str();
      const std::uint32_t ns = vocab_in.u32();
      for (std::uint32_t s = 0; s < ns; ++s) e.synonyms.push_back(vocab_in.str());
      try {
        idx.vocab_.add(std::move(e));
      } catch (const Error& err) {
        detail::ByteReader::corrupt(std::string("vocabulary: ") + err.what());
      }
    }

    if (doc_in.u64() != doc_count) detail::ByteReader::corrupt("doc count");
    idx.docs_.resize(static_cast<std::size_t>(doc_count));
    for (std::uint64_t i = 0; i < doc_count; ++i) {
      IndexedDocument& d = idx.docs_[i];
      d.doc.id = doc_in.str();
      d.doc.title = doc_in.str();
      d.doc.text = doc_in.str();
      d.title_tokens = doc_in.u32();
      d.text_tokens = doc_in.u32();
      const std::uint32_t nm = doc_in.u32();
      for (std::uint32_t m = 0; m < nm; ++m) {
        ConceptMention cm;
        cm.ordinal = doc_in.u32();
        if (cm.ordinal >= idx.vocab_.size())
          detail::ByteReader::corrupt("mention concept out of range");
        cm.concept_id = idx.vocab_.entry(cm.ordinal).concept_id;
        cm.token_start = doc_in.u32();
        cm.token_end = doc_in.u32();
        cm.char_start = doc_in.u32();
        cm.char_end = doc_in.u32();
        const std::uint8_t field = doc_in.u8();
        if (field > 1) detail::ByteReader::corrupt("mention field");
        cm.field = static_cast<Field>(field);
        d.mentions.push_back(std::move(cm));
      }
      if (!idx.by_id_.emplace(d.doc.id, static_cast<DocOrdinal>(i)).second)
        detail::ByteReader::corrupt("duplicate document id");
    }

    const std::uint64_t nterms = term_in.u64();
    for (std::uint64_t t = 0; t < nterms; ++t) {
      std::string tok = term_in.str();
      TermPostings p;
      const std::uint32_t df = term_in.u32();
      for (std::uint32_t i = 0; i < df; ++i) {
        const DocOrdinal d = term_in.u32();
        if (d >= doc_count) detail::ByteReader::corrupt("posting out of range");
        p.docs.push_back(d);
        const std::uint32_t tf = term_in.u32();
        for (std::uint32_t k = 0; k < tf; ++k) p.positions.push_back(term_in.u32());
        p.offsets.push_back(static_cast<std::uint32_t>(p.positions.size()));
      }
      idx.terms_.emplace(std::move(tok), std::move(p));
    }

    if (concept_in.u64() != idx.vocab_.size())
      detail::ByteReader::corrupt("concept postings size");
    idx.finish();
    // Stored concept postings must agree with the ones derived from mentions.
    for (std::size_t c = 0; c < idx.vocab_.size(); ++c) {
      const std::uint32_t len = concept_in.u32();
      DocSet stored(len);
      for (auto& d : stored) d = concept_in.u32();
      if (stored != idx.concept_postings_[c])
        detail::ByteReader::corrupt("concept postings mismatch");
    }
    return idx;
  }

  void save(const std::string& path) const {
    const std::string bytes = serialize();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Error::Kind::kIo, "cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Error::Kind::kIo, "write failed: " + path);
  }

  static Index load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Kind::kIo, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(Error::Kind::kIo, "read failed: " + path);
    return deserialize(bytes);
  }

 private:
  // Derives per-document concept sets, concept postings and the fingerprint.
  void finish() {
    concept_postings_.assign(vocab_.size(), {});
    for (std::size_t i = 0; i < docs_.size(); ++i) {
      auto& d = docs_[i];
      d.concepts.clear();
      for (const auto& m : d.mentions) d.concepts.push_back(m.ordinal);
      std::sort(d.concepts.begin(), d.concepts.end());
      d.concepts.erase(std::unique(d.concepts.begin(), d.concepts.end()),
                       d.concepts.end());
      for (ConceptOrdinal c : d.concepts)
        concept_postings_[c].push_back(static_cast<DocOrdinal>(i));
    }
    static constexpr char kHex[] = "0123456789abcdef";
    const std::uint64_t h = detail::fnv1a64(serialize());
    fingerprint_.assign(16, '0');
    for (int i = 0; i < 16; ++i) fingerprint_[15 - i] = kHex[(h >> (4 * i)) & 0xF];
  }

  Vocabulary vocab_;
  std::vector<IndexedDocument> docs_;
  std::unordered_map<std::string, DocOrdinal> by_id_;
  std::map<std::string, TermPostings, std::less<>> terms_;
  std::vector<DocSet> concept_postings_;
  double avg_doc_length_ = 0.0;
  std::string fingerprint_;
};

inline Index build_index(std::vector<Document> docs, Vocabulary vocab,
                         unsigned threads = 1) {
  return Index::build(std::move(docs), std::move(vocab), threads);
}

inline std::vector<SearchHit> search(const Index& index, const QueryAst& ast,
                                     std::size_t n) {
  return index.search(ast, n);
}

inline void save_index(const Index& index, const std::string& path) {
  index.save(path);
}

inline Index load_index(const std::string& path) { return Index::load(path); }

inline const DocSet& concept_documents(const Index& index,
                                       std::string_view concept_id) {
  return index.concept_documents(concept_id);
}

}  // namespace grafs
