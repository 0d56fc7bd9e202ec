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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grafs/error.hpp"
#include "grafs/text.hpp"

namespace grafs {

// Boolean query tree. And/Or carry >= 2 children, Not exactly one, Term one
// token and Phrase one or more tokens.
struct QueryNode {
  enum class Kind { kTerm, kPhrase, kAnd, kOr, kNot };

  Kind kind = Kind::kTerm;
  std::vector<std::string> tokens;
  std::vector<QueryNode> children;

  static QueryNode term(std::string token) {
    return {Kind::kTerm, {std::move(token)}, {}};
  }
  static QueryNode phrase(std::vector<std::string> tokens) {
    return {Kind::kPhrase, std::move(tokens), {}};
  }
  static QueryNode all_of(std::vector<QueryNode> children) {
    return {Kind::kAnd, {}, std::move(children)};
  }
  static QueryNode any_of(std::vector<QueryNode> children) {
    return {Kind::kOr, {}, std::move(children)};
  }
  static QueryNode negate(QueryNode child) {
    return {Kind::kNot, {}, {std::move(child)}};
  }

  bool is_leaf() const { return kind == Kind::kTerm || kind == Kind::kPhrase; }

  friend bool operator==(const QueryNode&, const QueryNode&) = default;
};

using QueryAst = QueryNode;

namespace detail {

struct Lexeme {
  enum class Type { kWord, kPhrase, kAnd, kOr, kNot, kOpen, kClose, kEnd };
  Type type = Type::kEnd;
  std::size_t pos = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Lexeme> lex_query(std::string_view s) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_space(c)) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Lexeme::Type::kOpen : Lexeme::Type::kClose, i,
                     {}});
      ++i;
    } else if (c == '"') {
      const std::size_t close = s.find('"', i + 1);
      if (close == std::string_view::npos)
        throw QuerySyntaxError(i, "unterminated quote");
      auto tokens = token_strings(s.substr(i + 1, close - i - 1));
      if (tokens.empty()) throw QuerySyntaxError(i, "empty phrase");
      out.push_back({Lexeme::Type::kPhrase, i, std::move(tokens)});
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && !is_space(s[j]) && s[j] != '(' && s[j] != ')' &&
             s[j] != '"')
        ++j;
      const std::string_view word = s.substr(i, j - i);
      if (word == "AND") {
        out.push_back({Lexeme::Type::kAnd, i, {}});
      } else if (word == "OR") {
        out.push_back({Lexeme::Type::kOr, i, {}});
      } else if (word == "NOT") {
        out.push_back({Lexeme::Type::kNot, i, {}});
      } else if (auto tokens = token_strings(word); !tokens.empty()) {
        out.push_back({Lexeme::Type::kWord, i, std::move(tokens)});
      }
      i = j;
    }
  }
  out.push_back({Lexeme::Type::kEnd, s.size(), {}});
  return out;
}

class QueryParser {
 public:
  explicit QueryParser(std::vector<Lexeme> lexemes)
      : lex_(std::move(lexemes)) {}

  QueryNode parse() {
    if (peek().type == Lexeme::Type::kEnd)
      throw QuerySyntaxError(0, "empty query");
    QueryNode root = parse_or();
    if (peek().type == Lexeme::Type::kClose)
      throw QuerySyntaxError(peek().pos, "unbalanced parenthesis");
    if (peek().type != Lexeme::Type::kEnd)
      throw QuerySyntaxError(peek().pos, "unexpected input");
    return root;
  }

 private:
  const Lexeme& peek() const { return lex_[pos_]; }
  const Lexeme& next() { return lex_[pos_++]; }

  static bool starts_unary(Lexeme::Type t) {
    return t == Lexeme::Type::kWord || t == Lexeme::Type::kPhrase ||
           t == Lexeme::Type::kNot || t == Lexeme::Type::kOpen;
  }

  QueryNode parse_or() {
    std::vector<QueryNode> parts;
    parts.push_back(parse_and());
    while (peek().type == Lexeme::Type::kOr) {
      next();
      parts.push_back(parse_and());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return QueryNode::any_of(std::move(parts));
  }

  QueryNode parse_and() {
    std::vector<QueryNode> parts;
    parts.push_back(parse_unary());
    for (;;) {
      if (peek().type == Lexeme::Type::kAnd) {
        next();
        parts.push_back(parse_unary());
      } else if (starts_unary(peek().type)) {
        parts.push_back(parse_unary());
      } else {
        break;
      }
    }
    if (parts.size() == 1) return std::move(parts.front());
    return QueryNode::all_of(std::move(parts));
  }

  QueryNode parse_unary() {
    const Lexeme& lx = peek();
    switch (lx.type) {
      case Lexeme::Type::kNot:
        next();
        return QueryNode::negate(parse_unary());
      case Lexeme::Type::kOpen: {
        const std::size_t open = lx.pos;
        next();
        if (peek().type == Lexeme::Type::kClose)
          throw QuerySyntaxError(peek().pos, "empty group");
        open_.push_back(open);
        QueryNode inner = parse_or();
        if (peek().type != Lexeme::Type::kClose)
          throw QuerySyntaxError(open, "unbalanced parenthesis");
        open_.pop_back();
        next();
        return inner;
      }
      case Lexeme::Type::kPhrase:
        return QueryNode::phrase(next().tokens);
      case Lexeme::Type::kWord: {
        auto tokens = next().tokens;
        if (tokens.size() == 1) return QueryNode::term(std::move(tokens[0]));
        return QueryNode::phrase(std::move(tokens));
      }
      case Lexeme::Type::kClose:
        throw QuerySyntaxError(lx.pos, pos_ > 0 && is_operator(lex_[pos_ - 1])
                                           ? "dangling operator"
                                           : "unbalanced parenthesis");
      case Lexeme::Type::kEnd:
        if (pos_ > 0 && is_operator(lex_[pos_ - 1]))
          throw QuerySyntaxError(lex_[pos_ - 1].pos, "dangling operator");
        if (!open_.empty())
          throw QuerySyntaxError(open_.back(), "unbalanced parenthesis");
        throw QuerySyntaxError(lx.pos, "unexpected end of query");
      case Lexeme::Type::kAnd:
      case Lexeme::Type::kOr:
        throw QuerySyntaxError(lx.pos, "dangling operator");
    }
    throw QuerySyntaxError(lx.pos, "unexpected input");
  }

  static bool is_operator(const Lexeme& lx) {
    return lx.type == Lexeme::Type::kAnd || lx.type == Lexeme::Type::kOr ||
           lx.type == Lexeme::Type::kNot;
  }

  std::vector<Lexeme> lex_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> open_;
};

inline void collect_positive(const QueryNode& n,
                             std::vector<const QueryNode*>& out) {
  if (n.is_leaf()) {
    out.push_back(&n);
    return;
  }
  if (n.kind == QueryNode::Kind::kNot) return;
  for (const auto& c : n.children) collect_positive(c, out);
}

}  // namespace detail

// Leaves not below any NOT, in left-to-right order.
inline std::vector<const QueryNode*> positive_leaves(const QueryNode& root) {
  std::vector<const QueryNode*> out;
  detail::collect_positive(root, out);
  return out;
}

// Tokens of the positive leaves, duplicates kept.
inline std::vector<std::string> positive_terms(const QueryNode& root) {
  std::vector<std::string> out;
  for (const QueryNode* leaf : positive_leaves(root))
    out.insert(out.end(), leaf->tokens.begin(), leaf->tokens.end());
  return out;
}

// Parses a Boolean query. Adjacent operands are ANDed; AND/OR/NOT are
// operators only in uppercase. A query without any positive leaf is
// rejected because its complement cannot be ranked.
inline QueryAst parse_query(std::string_view s) {
  detail::QueryParser parser(detail::lex_query(s));
  QueryAst ast = parser.parse();
  if (positive_leaves(ast).empty())
    throw QuerySyntaxError(0, "query has no positive terms");
  return ast;
}

// Canonical text form; parse_query(to_string(ast)) == ast.
inline std::string to_string(const QueryNode& n) {
  auto wrapped = [](const QueryNode& c) {
    if (c.kind == QueryNode::Kind::kAnd || c.kind == QueryNode::Kind::kOr)
      return "(" + to_string(c) + ")";
    return to_string(c);
  };
  switch (n.kind) {
    case QueryNode::Kind::kTerm:
      return n.tokens.front();
    case QueryNode::Kind::kPhrase: {
      std::string out = "\"";
      for (std::size_t i = 0; i < n.tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += n.tokens[i];
      }
      return out + "\"";
    }
    case QueryNode::Kind::kNot:
      return "NOT " + wrapped(n.children.front());
    case QueryNode::Kind::kAnd:
    case QueryNode::Kind::kOr: {
      const char* op = n.kind == QueryNode::Kind::kAnd ? " AND " : " OR ";
      std::string out;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += op;
        out += wrapped(n.children[i]);
      }
      return out;
    }
  }
  return {};
}

}  // namespace grafs
