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

#ifndef ACTAG_TOKENIZER_H_
#define ACTAG_TOKENIZER_H_

// Text segmentation and the word_TAG output format.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "actag/tagset.h"

namespace actag {

enum class TokenKind { kWord, kPunctuation, kDate, kMultiword, kNumber };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kWord;
  std::size_t position = 0;  // byte offset in the tokenized text
};

struct Sentence {
  std::vector<Token> tokens;
};

// Joins the words of every listed multiword unit with '_'. Matching is
// case-insensitive on word boundaries, longest unit first, leftmost,
// non-overlapping; any whitespace run between components matches.
std::string preprocess_multiwords(std::string_view text,
                                  std::span<const std::string> units);

// Kind of a token given only its text: dd.mm.yy and yyyy-yyyy are dates.
TokenKind classify_token(std::string_view text);

class Tokenizer {
 public:
  // Abbreviations are listed with their final dot ("Sr.").
  explicit Tokenizer(std::span<const std::string> abbreviations = {});

  // Splits words, numbers, dates and punctuation; a sentence ends at
  // ". ! ? ..." followed by whitespace and an uppercase letter (or an
  // opening Spanish question or exclamation mark), or by end of input.
  std::vector<Sentence> tokenize(std::string_view text) const;

 private:
  std::unordered_set<std::string> abbreviations_;  // lowercased
};

// "tok_TAG tok_TAG ...". Throws FormatError when the lengths differ.
std::string format_output(const Sentence& sentence, std::span<const Tag> tags);

struct TaggedToken {
  std::string text;
  std::string tag;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

// Splits each item at its last underscore; tokens may contain underscores
// (multiwords), tags may not.
std::vector<TaggedToken> parse_tagged_line(std::string_view line);
// One sentence per non-blank line.
std::vector<std::vector<TaggedToken>> parse_tagged_text(std::string_view text);

struct PatternElement {
  std::optional<std::string> text;  // lowercased token text constraint
  std::string tag;                  // "*" matches any tag
};

// Rewrites the tags of a matching token window. A "*" in the replacement
// keeps the tag in place.
struct PosteditRule {
  std::vector<PatternElement> pattern;
  std::vector<std::string> replacement;
};

// One rule per line: "PREP{text=de} VLPI3S -> PREP VLINF".
std::vector<PosteditRule> parse_postedit_rules(std::string_view text,
                                               const Tagset& tagset);

// Tags every sentence-final "." with full_stop_tag, then applies the rules
// in a single left-to-right pass with non-overlapping matches (first rule in
// list order wins at a position). Blank lines pass through.
std::string postedit(std::string_view tagged_text,
                     std::span<const PosteditRule> rules, const Tag& full_stop_tag);

}  // namespace actag

#endif  // ACTAG_TOKENIZER_H_
