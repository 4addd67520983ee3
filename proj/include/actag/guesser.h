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

#ifndef ACTAG_GUESSER_H_
#define ACTAG_GUESSER_H_

// Unknown-word guessing from word endings ("suffixes" in the wide sense: any
// word-final character sequence). Two kinds of tables exist: manual ones
// written by a linguist, and learned ones computed from a corpus and the
// lexicon. All matching is on lowercased Unicode characters.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "actag/lexicon.h"
#include "actag/tagset.h"

namespace actag {

enum class Provenance { kManual, kLearned };

// Manual files may group entries in sections; enclitic-verb and foreign-word
// endings are counted apart from ordinary suffixes.
enum class SuffixCategory { kGeneral, kEnclitic, kForeign };

struct SuffixEntry {
  std::string suffix;  // lowercase, non-empty, no whitespace
  AmbiguityClass cls;
  Provenance provenance = Provenance::kManual;
  SuffixCategory category = SuffixCategory::kGeneral;
};

class SuffixTable {
 public:
  using Map = std::map<std::string, SuffixEntry, std::less<>>;

  // Throws FormatError on a duplicate or malformed suffix.
  void insert(SuffixEntry entry);

  const SuffixEntry* find(std::string_view suffix) const;
  // Longest entry whose suffix ends the lowercased word, or nullptr.
  const SuffixEntry* longest_match(std::string_view word) const;

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Longest key, in characters.
  std::size_t max_len() const { return max_len_; }

 private:
  Map entries_;
  std::size_t max_len_ = 0;
};

struct GuesserConfig {
  std::size_t suffix_limit = 5;
  // Minimum number of corpus tokens ending in a suffix for it to be proposed.
  std::size_t min_support = 1;
};

struct SuffixStats {
  std::size_t num_suffixes = 0;    // general entries only
  std::size_t max_suffix_len = 0;  // characters
  std::size_t total_tags = 0;
  double tags_per_suffix = 0.0;
  std::size_t enclitic_suffixes = 0;
  std::size_t foreign_suffixes = 0;
};

// Suffix file: "suffix<TAB>tag1 tag2 ...". A first line "# learned" marks a
// learned table; otherwise entries are manual. Comment lines "# @general",
// "# @enclitic" and "# @foreign" switch the category of the entries below.
SuffixTable load_suffixes(std::string_view text, const Tagset& tagset);
std::string serialize_suffixes(const SuffixTable& table);

// Proposes every proper ending (1..suffix_limit characters) of the corpus
// words, collects the tags of lexicon forms with that ending, keeps those in
// the open class, and assigns the registry class equal to that set, or the
// open class when no registry class matches. Endings whose open-class tag
// set is empty get no entry.
SuffixTable train_guesser(std::span<const std::string> corpus_words,
                          const Lexicon& lexicon, const ClassRegistry& registry,
                          const GuesserConfig& config);

// Longest-suffix match; the tagset's open class when nothing matches.
AmbiguityClass guess_class(const SuffixTable& table, std::string_view word,
                           const Tagset& tagset);

SuffixStats suffix_stats(const SuffixTable& table);

}  // namespace actag

#endif  // ACTAG_GUESSER_H_
