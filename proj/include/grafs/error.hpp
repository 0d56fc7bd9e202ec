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
#include <optional>
#include <stdexcept>
#include <string>

namespace grafs {

// Base of every error the library raises. Callers that need to map failures
// onto exit codes or HTTP statuses switch on kind().
class Error : public std::runtime_error {
 public:
  enum class Kind {
    kParse,              // malformed corpus / vocabulary input
    kDuplicateId,        // repeated document id
    kAmbiguousSurface,   // two concepts share a token sequence
    kQuerySyntax,        // query string does not parse
    kUnknownConcept,     // concept id not in the vocabulary
    kEmptyResult,        // operation needs a nonempty D_q
    kForcedNotCandidate, // forced concept not mentioned in D_q
    kInvalidArgument,    // request invariant violated
    kIndexFormat,        // bad magic, version, truncation, checksum
    kIo,
  };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Corpus or vocabulary line that could not be parsed. line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(Kind::kParse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class QuerySyntaxError : public Error {
 public:
  QuerySyntaxError(std::size_t position, const std::string& message)
      : Error(Kind::kQuerySyntax,
              message + " at byte " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownConceptError : public Error {
 public:
  explicit UnknownConceptError(const std::string& concept_id)
      : Error(Kind::kUnknownConcept, "unknown concept: " + concept_id),
        concept_id_(concept_id) {}

  const std::string& concept_id() const noexcept { return concept_id_; }

 private:
  std::string concept_id_;
};

}  // namespace grafs
