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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "grafs/query.hpp"

namespace grafs {
namespace {

using Q = QueryNode;

TEST(ParseQuery, AdjacencyMeansAnd) {
  EXPECT_EQ(parse_query("covid antibody"),
            Q::all_of({Q::term("covid"), Q::term("antibody")}));
}

TEST(ParseQuery, ParenthesesAndPrecedence) {
  EXPECT_EQ(parse_query("treatment AND (depression OR anxiety)"),
            Q::all_of({Q::term("treatment"),
                       Q::any_of({Q::term("depression"), Q::term("anxiety")})}));
  EXPECT_EQ(parse_query("a b OR c"),
            Q::any_of({Q::all_of({Q::term("a"), Q::term("b")}), Q::term("c")}));
}

TEST(ParseQuery, PhrasesAndCaseFolding) {
  EXPECT_EQ(parse_query("\"Postnatal Depression\" NOT Anxiety"),
            Q::all_of({Q::phrase({"postnatal", "depression"}),
                       Q::negate(Q::term("anxiety"))}));
}

TEST(ParseQuery, HyphenatedWordIsPhrase) {
  EXPECT_EQ(parse_query("covid-19"), Q::phrase({"covid", "19"}));
}

TEST(ParseQuery, LowercaseOperatorsAreTerms) {
  EXPECT_EQ(parse_query("cats and dogs"),
            Q::all_of({Q::term("cats"), Q::term("and"), Q::term("dogs")}));
}

void expect_syntax_error(const std::string& q, std::size_t pos,
                         const std::string& what) {
  try {
    parse_query(q);
    FAIL() << "no error for " << q;
  } catch (const QuerySyntaxError& e) {
    EXPECT_EQ(e.position(), pos) << q;
    EXPECT_NE(std::string(e.what()).find(what), std::string::npos)
        << q << ": " << e.what();
  }
}

TEST(ParseQuery, SyntaxErrorsCarryPositions) {
  expect_syntax_error("NOT", 0, "dangling operator");
  expect_syntax_error("a AND", 2, "dangling operator");
  expect_syntax_error("OR a", 0, "dangling operator");
  expect_syntax_error("", 0, "empty query");
  expect_syntax_error("   ", 0, "empty query");
  expect_syntax_error("(a", 0, "unbalanced parenthesis");
  expect_syntax_error("a)", 1, "unbalanced parenthesis");
  expect_syntax_error("((", 1, "unbalanced parenthesis");
  expect_syntax_error("a \"b c", 2, "unterminated quote");
  expect_syntax_error("()", 1, "empty group");
}

TEST(ParseQuery, PureNegationRejected) {
  expect_syntax_error("NOT a", 0, "no positive terms");
  expect_syntax_error("NOT a NOT b", 0, "no positive terms");
}

TEST(ParseQuery, PositiveTerms) {
  const auto ast = parse_query("a \"b c\" NOT d (e OR NOT f)");
  EXPECT_EQ(positive_terms(ast),
            (std::vector<std::string>{"a", "b", "c", "e"}));
}

Q random_ast(std::mt19937& rng, int depth) {
  static const std::vector<std::string> words = {"alpha", "beta", "gamma",
                                                 "delta", "x1", "42"};
  std::uniform_int_distribution<std::size_t> w(0, words.size() - 1);
  const int kind = std::uniform_int_distribution<int>(0, depth > 0 ? 4 : 1)(rng);
  switch (kind) {
    case 0:
      return Q::term(words[w(rng)]);
    case 1: {
      std::vector<std::string> toks;
      for (int i = std::uniform_int_distribution<int>(1, 3)(rng); i > 0; --i)
        toks.push_back(words[w(rng)]);
      return Q::phrase(toks);
    }
    case 2:
      return Q::negate(random_ast(rng, depth - 1));
    default: {
      std::vector<Q> kids;
      for (int i = std::uniform_int_distribution<int>(2, 3)(rng); i > 0; --i)
        kids.push_back(random_ast(rng, depth - 1));
      return kind == 3 ? Q::all_of(kids) : Q::any_of(kids);
    }
  }
}

TEST(ParseQuery, PrintParseRoundTrip) {
  std::mt19937 rng(3);
  int checked = 0;
  while (checked < 1000) {
    const Q ast = random_ast(rng, 3);
    if (positive_leaves(ast).empty()) continue;
    const std::string text = to_string(ast);
    ASSERT_EQ(parse_query(text), ast) << text;
    ASSERT_EQ(to_string(parse_query(text)), text);
    ++checked;
  }
}

TEST(ParseQuery, PrintIsIdempotentOnRawStrings) {
  for (const char* s : {"a b OR c", "x AND (y z)", "\"p q\" OR NOT (r s) t",
                        "(a OR b) OR c", "a NOT NOT b"}) {
    const std::string once = to_string(parse_query(s));
    EXPECT_EQ(to_string(parse_query(once)), once) << s;
  }
}

}  // namespace
}  // namespace grafs
