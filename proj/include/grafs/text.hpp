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

#include <locale.h>
#include <wctype.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grafs {

struct Token {
  std::string text;  // case-folded
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

namespace detail {

// Decodes one UTF-8 scalar starting at pos. Returns the code point and sets
// len; malformed sequences decode as U+FFFD with len 1.
inline char32_t decode_utf8(std::string_view s, std::size_t pos,
                            std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> int {
    if (pos + i >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  len = 1;
  if (b0 < 0x80) return b0;
  if ((b0 & 0xE0) == 0xC0) {
    const int c1 = cont(1);
    if (c1 < 0 || b0 < 0xC2) return 0xFFFD;
    len = 2;
    return (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
  }
  if ((b0 & 0xF0) == 0xE0) {
    const int c1 = cont(1), c2 = cont(2);
    if (c1 < 0 || c2 < 0) return 0xFFFD;
    const char32_t cp =
        (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return 0xFFFD;
    len = 3;
    return cp;
  }
  if ((b0 & 0xF8) == 0xF0) {
    const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 < 0 || c2 < 0 || c3 < 0) return 0xFFFD;
    const char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) |
                        (char32_t(c2) << 6) | char32_t(c3);
    if (cp < 0x10000 || cp > 0x10FFFF) return 0xFFFD;
    len = 4;
    return cp;
  }
  return 0xFFFD;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Character classes come from the C.UTF-8 locale. Without it, every
// non-ASCII scalar except U+FFFD counts as a word character and is left
// unfolded.
class CharClasses {
 public:
  static const CharClasses& instance() {
    static const CharClasses classes;
    return classes;
  }

  bool is_word(char32_t cp) const {
    if (cp < 0x80) {
      return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
             (cp >= 'A' && cp <= 'Z');
    }
    if (cp == 0xFFFD) return false;
    if (locale_ == nullptr) return true;
    return iswalnum_l(static_cast<wint_t>(cp), locale_) != 0;
  }

  char32_t fold(char32_t cp) const {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    if (locale_ == nullptr) return cp;
    return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), locale_));
  }

  CharClasses(const CharClasses&) = delete;
  CharClasses& operator=(const CharClasses&) = delete;

 private:
  CharClasses() {
    locale_ = newlocale(LC_CTYPE_MASK, "C.UTF-8", locale_t{});
    if (locale_ == nullptr)
      locale_ = newlocale(LC_CTYPE_MASK, "en_US.UTF-8", locale_t{});
  }
  ~CharClasses() {
    if (locale_ != nullptr) freelocale(locale_);
  }

  locale_t locale_ = nullptr;
};

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace detail

// Splits text into maximal runs of letters/digits, case-folded. Offsets are
// byte offsets into the original text.
inline std::vector<Token> tokenize(std::string_view text) {
  const auto& classes = detail::CharClasses::instance();
  std::vector<Token> tokens;
  std::size_t pos = 0;
  bool in_token = false;
  Token current;
  while (pos < text.size()) {
    std::size_t len = 1;
    const char32_t cp = detail::decode_utf8(text, pos, len);
    if (classes.is_word(cp)) {
      if (!in_token) {
        in_token = true;
        current = Token{{}, pos, pos};
      }
      detail::append_utf8(current.text, classes.fold(cp));
      current.char_end = pos + len;
    } else if (in_token) {
      tokens.push_back(std::move(current));
      in_token = false;
    }
    pos += len;
  }
  if (in_token) tokens.push_back(std::move(current));
  return tokens;
}

// Token texts only; convenient for vocabulary keys and query terms.
inline std::vector<std::string> token_strings(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

// Returns [begin, end) with leading and trailing whitespace removed.
inline TextSpan trim_span(std::string_view text, std::size_t begin,
                          std::size_t end) {
  while (begin < end && detail::is_space(text[begin])) ++begin;
  while (end > begin && detail::is_space(text[end - 1])) --end;
  return {begin, end};
}

// Splits after '.', '!' or '?' when followed by whitespace or end of text.
// Abbreviations ("e.g. this") split too; that is accepted.
inline std::vector<TextSpan> segment_sentences(std::string_view text) {
  std::vector<TextSpan> spans;
  auto emit = [&](std::size_t begin, std::size_t end) {
    const TextSpan span = trim_span(text, begin, end);
    if (span.begin < span.end) spans.push_back(span);
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == text.size() || detail::is_space(text[i + 1]))) {
      emit(start, i + 1);
      start = i + 1;
    }
  }
  emit(start, text.size());
  return spans;
}

}  // namespace grafs
