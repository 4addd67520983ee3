// Copyright 2026 The actag Authors.
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

#include "actag/tokenizer.h"

#include <algorithm>

#include <fmt/format.h>

#include "actag/error.h"
#include "actag/text.h"
#include "actag/utf8.h"

namespace actag {
namespace {

using utf8::is_alnum;
using utf8::is_digit;

bool is_word_char(char32_t c) { return is_alnum(c) || c == U'_'; }

bool is_inner_joiner(char32_t c) {
  return c == U'-' || c == U'.' || c == U',' || c == U'\'' || c == U'’';
}

bool is_terminator(std::string_view t) {
  return t == "." || t == "!" || t == "?" || t == "...";
}

bool all_digits(std::u32string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

bool is_date(std::u32string_view s) {
  if (s.size() == 8 && s[2] == U'.' && s[5] == U'.') {
    return all_digits(s.substr(0, 2)) && all_digits(s.substr(3, 2)) &&
           all_digits(s.substr(6, 2));
  }
  if (s.size() == 9 && s[4] == U'-') {
    return all_digits(s.substr(0, 4)) && all_digits(s.substr(5, 4));
  }
  return false;
}

bool is_number(std::u32string_view s) {
  if (s.empty() || !is_digit(s.front()) || !is_digit(s.back())) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_digit(s[i])) continue;
    if ((s[i] == U'.' || s[i] == U',') && is_digit(s[i + 1])) continue;
    return false;
  }
  return true;
}

struct Unit {
  std::vector<std::u32string> words;  // lowercased
  std::size_t chars = 0;
};

PatternElement parse_element(std::string_view item, const Tagset& tagset) {
  PatternElement el;
  auto brace = item.find('{');
  std::string_view tag = item.substr(0, brace);
  if (brace != std::string_view::npos) {
    if (item.back() != '}') throw FormatError(fmt::format("bad pattern element '{}'", item));
    auto inner = item.substr(brace + 1, item.size() - brace - 2);
    if (!inner.starts_with("text=") || inner.size() == 5) {
      throw FormatError(fmt::format("bad constraint in '{}'", item));
    }
    el.text = utf8::lowercase(inner.substr(5));
  }
  if (tag != "*" && !tagset.contains(tag)) {
    throw FormatError(fmt::format("unknown tag '{}'", tag));
  }
  el.tag = std::string(tag);
  return el;
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kPunctuation: return "punct";
    case TokenKind::kDate: return "date";
    case TokenKind::kMultiword: return "multiword";
    case TokenKind::kNumber: return "number";
  }
  return "?";
}

std::string preprocess_multiwords(std::string_view text,
                                  std::span<const std::string> units) {
  std::vector<Unit> parsed;
  for (const auto& u : units) {
    Unit unit;
    for (auto w : split_whitespace(u)) {
      unit.words.push_back(utf8::decode(utf8::lowercase(w)));
      unit.chars += unit.words.back().size();
    }
    if (unit.words.size() >= 2) parsed.push_back(std::move(unit));
  }
  if (parsed.empty()) return std::string(text);
  std::stable_sort(parsed.begin(), parsed.end(), [](const Unit& a, const Unit& b) {
    if (a.words.size() != b.words.size()) return a.words.size() > b.words.size();
    return a.chars > b.chars;
  });

  const std::u32string chars = utf8::decode(text);
  const std::size_t n = chars.size();
  auto lower_at = [&](std::size_t i) { return utf8::to_lower(chars[i]); };

  // Returns the end of the match starting at i, or 0.
  auto match = [&](const Unit& unit, std::size_t i) -> std::size_t {
    std::size_t j = i;
    for (std::size_t k = 0; k < unit.words.size(); ++k) {
      if (k > 0) {
        const std::size_t ws = j;
        while (j < n && utf8::is_space(chars[j])) ++j;
        if (j == ws) return 0;
      }
      for (char32_t c : unit.words[k]) {
        if (j >= n || lower_at(j) != c) return 0;
        ++j;
      }
    }
    if (j < n && is_word_char(chars[j])) return 0;
    return j;
  };

  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < n) {
    const bool boundary = i == 0 || !is_word_char(chars[i - 1]);
    std::size_t end = 0;
    if (boundary && is_word_char(chars[i])) {
      for (const auto& unit : parsed) {
        if ((end = match(unit, i)) != 0) break;
      }
    }
    if (end == 0) {
      utf8::append(out, chars[i++]);
      continue;
    }
    bool in_space = false;
    for (; i < end; ++i) {
      if (utf8::is_space(chars[i])) {
        if (!in_space) out.push_back('_');
        in_space = true;
      } else {
        utf8::append(out, chars[i]);
        in_space = false;
      }
    }
  }
  return out;
}

TokenKind classify_token(std::string_view text) {
  const std::u32string s = utf8::decode(text);
  if (is_date(s)) return TokenKind::kDate;
  if (is_number(s)) return TokenKind::kNumber;
  if (!std::any_of(s.begin(), s.end(), is_alnum)) return TokenKind::kPunctuation;
  if (s.find(U'_') != std::u32string::npos) return TokenKind::kMultiword;
  return TokenKind::kWord;
}

Tokenizer::Tokenizer(std::span<const std::string> abbreviations) {
  for (const auto& a : abbreviations) abbreviations_.insert(utf8::lowercase(a));
}

std::vector<Sentence> Tokenizer::tokenize(std::string_view text) const {
  const auto decoded = utf8::decode_with_offsets(text);
  const auto& chars = decoded.chars;
  const auto& offsets = decoded.offsets;
  const std::size_t n = chars.size();
  auto bytes = [&](std::size_t b, std::size_t e) {
    return std::string(text.substr(offsets[b], offsets[e] - offsets[b]));
  };

  std::vector<Sentence> sentences;
  Sentence current;
  auto flush = [&] {
    if (!current.tokens.empty()) sentences.push_back(std::move(current));
    current = Sentence{};
  };

  std::size_t i = 0;
  while (i < n) {
    const char32_t c = chars[i];
    if (utf8::is_space(c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    Token tok;
    tok.position = offsets[i];
    if (is_word_char(c)) {
      while (j < n) {
        if (is_word_char(chars[j])) {
          ++j;
        } else if (is_inner_joiner(chars[j]) && j + 1 < n && is_alnum(chars[j - 1]) &&
                   is_alnum(chars[j + 1])) {
          ++j;
        } else {
          break;
        }
      }
      tok.text = bytes(i, j);
      if (j < n && chars[j] == U'.' &&
          abbreviations_.contains(utf8::lowercase(tok.text) + ".")) {
        tok.text.push_back('.');
        ++j;
        tok.kind = TokenKind::kWord;
      } else {
        tok.kind = classify_token(tok.text);
      }
    } else {
      if (c == U'.') {
        while (j < n && chars[j] == U'.') ++j;
      }
      tok.text = bytes(i, j);
      tok.kind = TokenKind::kPunctuation;
    }
    const bool terminator =
        tok.kind == TokenKind::kPunctuation && is_terminator(tok.text);
    current.tokens.push_back(std::move(tok));
    i = j;
    if (terminator) {
      std::size_t k = j;
      while (k < n && utf8::is_space(chars[k])) ++k;
      if (k == n ||
          (k > j && (utf8::is_upper(chars[k]) || chars[k] == U'¿' ||
                     chars[k] == U'¡'))) {
        flush();
      }
    }
  }
  flush();
  return sentences;
}

std::string format_output(const Sentence& sentence, std::span<const Tag> tags) {
  if (sentence.tokens.size() != tags.size()) {
    throw FormatError(fmt::format("{} tokens but {} tags", sentence.tokens.size(),
                                  tags.size()));
  }
  std::string out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += sentence.tokens[i].text;
    out.push_back('_');
    out += tags[i].name();
  }
  return out;
}

std::vector<TaggedToken> parse_tagged_line(std::string_view line) {
  std::vector<TaggedToken> out;
  for (auto item : split_whitespace(line)) {
    const auto us = item.rfind('_');
    if (us == std::string_view::npos || us == 0 || us + 1 == item.size()) {
      throw FormatError(fmt::format("malformed tagged token '{}'", item));
    }
    out.push_back({std::string(item.substr(0, us)), std::string(item.substr(us + 1))});
  }
  return out;
}

std::vector<std::vector<TaggedToken>> parse_tagged_text(std::string_view text) {
  std::vector<std::vector<TaggedToken>> out;
  std::size_t lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_tagged_line(line));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  return out;
}

std::vector<PosteditRule> parse_postedit_rules(std::string_view text,
                                               const Tagset& tagset) {
  std::vector<PosteditRule> rules;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw FormatError(fmt::format("postedit line {}: missing '->'", lineno));
    }
    PosteditRule rule;
    try {
      for (auto item : split_whitespace(line.substr(0, arrow))) {
        rule.pattern.push_back(parse_element(item, tagset));
      }
      for (auto item : split_whitespace(line.substr(arrow + 2))) {
        if (item != "*" && !tagset.contains(item)) {
          throw FormatError(fmt::format("unknown tag '{}'", item));
        }
        rule.replacement.emplace_back(item);
      }
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("postedit line {}: {}", lineno, e.what()));
    }
    if (rule.pattern.empty() || rule.pattern.size() != rule.replacement.size()) {
      throw FormatError(
          fmt::format("postedit line {}: pattern and replacement lengths differ", lineno));
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string postedit(std::string_view tagged_text,
                     std::span<const PosteditRule> rules, const Tag& full_stop_tag) {
  std::string out;
  out.reserve(tagged_text.size());
  const auto lines = split_lines(tagged_text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto line = lines[li];
    if (!trim(line).empty()) {
      auto toks = parse_tagged_line(line);
      if (toks.back().text == ".") toks.back().tag = full_stop_tag.name();

      std::vector<std::string> lowered;
      lowered.reserve(toks.size());
      for (const auto& t : toks) lowered.push_back(utf8::lowercase(t.text));

      auto matches = [&](const PosteditRule& r, std::size_t at) {
        if (at + r.pattern.size() > toks.size()) return false;
        for (std::size_t k = 0; k < r.pattern.size(); ++k) {
          const auto& el = r.pattern[k];
          if (el.tag != "*" && el.tag != toks[at + k].tag) return false;
          if (el.text && *el.text != lowered[at + k]) return false;
        }
        return true;
      };
      std::size_t i = 0;
      while (i < toks.size()) {
        const PosteditRule* hit = nullptr;
        for (const auto& r : rules) {
          if (matches(r, i)) {
            hit = &r;
            break;
          }
        }
        if (!hit) {
          ++i;
          continue;
        }
        for (std::size_t k = 0; k < hit->replacement.size(); ++k) {
          if (hit->replacement[k] != "*") toks[i + k].tag = hit->replacement[k];
        }
        i += hit->pattern.size();
      }
      for (std::size_t k = 0; k < toks.size(); ++k) {
        if (k > 0) out.push_back(' ');
        out += toks[k].text;
        out.push_back('_');
        out += toks[k].tag;
      }
    }
    if (li + 1 < lines.size() || tagged_text.ends_with('\n')) out.push_back('\n');
  }
  return out;
}

}  // namespace actag
