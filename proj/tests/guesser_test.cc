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

#include "actag/guesser.h"

#include <gtest/gtest.h>

#include "actag/error.h"

namespace actag {
namespace {

Tagset SpanishTagset() {
  return parse_tagset(
      "ADJGFS\nADVGR\nART\nNCFS\nNCMS\nPREP\nVCLI\nFW\nVLPI3S\nVLPS1S\nVLPS3S\n"
      "OPEN: ADJGFS NCFS NCMS VLPI3S VLPS1S VLPS3S\n");
}

TEST(SuffixTableTest, LongestMatchIsCaseInsensitiveAndUtf8Aware) {
  const Tagset ts = SpanishTagset();
  const SuffixTable t = load_suffixes("a\tNCFS\nción\tNCFS\nmente\tADVGR\n", ts);
  ASSERT_NE(t.longest_match("CANCIÓN"), nullptr);
  EXPECT_EQ(t.longest_match("CANCIÓN")->suffix, "ción");
  EXPECT_EQ(t.longest_match("casa")->suffix, "a");
  EXPECT_EQ(t.longest_match("rápidamente")->suffix, "mente");
  EXPECT_EQ(t.longest_match("perro"), nullptr);
  EXPECT_EQ(t.max_len(), 5u);
  EXPECT_EQ(guess_class(t, "perro", ts), ts.open_class());
}

TEST(SuffixTableTest, RejectsDuplicatesAndBadKeys) {
  const Tagset ts = SpanishTagset();
  EXPECT_THROW(load_suffixes("a\tNCFS\na\tNCMS\n", ts), FormatError);
  EXPECT_THROW(load_suffixes("A\tNCFS\n", ts), FormatError);
  EXPECT_THROW(load_suffixes("a\tXX\n", ts), FormatError);
  EXPECT_THROW(load_suffixes("a NCFS\n", ts), FormatError);
}

TEST(SuffixTableTest, CategoriesAndProvenance) {
  const Tagset ts = SpanishTagset();
  const SuffixTable manual =
      load_suffixes("# @general\na\tNCFS\n# @enclitic\narlo\tVCLI\n# @foreign\ning\tFW\n", ts);
  EXPECT_EQ(manual.find("a")->provenance, Provenance::kManual);
  EXPECT_EQ(manual.find("arlo")->category, SuffixCategory::kEnclitic);
  EXPECT_EQ(manual.find("ing")->category, SuffixCategory::kForeign);
  const SuffixTable learned = load_suffixes("# learned\na\tNCFS\n", ts);
  EXPECT_EQ(learned.find("a")->provenance, Provenance::kLearned);
}

TEST(SuffixTableTest, SerializationRoundTrips) {
  const Tagset ts = SpanishTagset();
  const std::string text = "# @general\na\tADJGFS NCFS\n# @enclitic\narlo\tVCLI\n";
  const SuffixTable t = load_suffixes(text, ts);
  const SuffixTable again = load_suffixes(serialize_suffixes(t), ts);
  ASSERT_EQ(again.size(), t.size());
  for (const auto& [k, e] : t.entries()) {
    EXPECT_EQ(again.find(k)->cls, e.cls);
    EXPECT_EQ(again.find(k)->category, e.category);
    EXPECT_EQ(again.find(k)->provenance, e.provenance);
  }
}

TEST(TrainGuesserTest, ProperSuffixesOnly) {
  const Tagset ts = SpanishTagset();
  const Lexicon lex = parse_lexicon("casa\tNCFS\n", ts);
  const ClassRegistry reg = registry_from_lexicon(lex, ts);
  const std::vector<std::string> words = {"casa"};
  const SuffixTable t = train_guesser(words, lex, reg, {.suffix_limit = 5, .min_support = 1});
  EXPECT_EQ(t.find("casa"), nullptr);
  ASSERT_NE(t.find("asa"), nullptr);
  EXPECT_EQ(t.find("asa")->cls.to_string(), "NCFS");
  EXPECT_EQ(t.find("asa")->provenance, Provenance::kLearned);
  EXPECT_EQ(t.size(), 3u);
}

TEST(TrainGuesserTest, ClosedTagsDroppedAndLimitRespected) {
  const Tagset ts = SpanishTagset();
  const Lexicon lex = parse_lexicon("para\tPREP\nmesa\tNCFS\n", ts);
  const ClassRegistry reg = registry_from_lexicon(lex, ts);
  const std::vector<std::string> words = {"para", "mesa", "tiempos", "1990"};
  const SuffixTable t = train_guesser(words, lex, reg, {.suffix_limit = 2, .min_support = 1});
  EXPECT_EQ(t.find("a")->cls.to_string(), "NCFS");
  EXPECT_EQ(t.find("ra"), nullptr);  // only PREP
  EXPECT_EQ(t.max_len(), 2u);
  EXPECT_THROW(train_guesser(words, lex, reg, {.suffix_limit = 0, .min_support = 1}), Error);
}

TEST(TrainGuesserTest, MinSupportCountsCorpusTokens) {
  const Tagset ts = SpanishTagset();
  const Lexicon lex = parse_lexicon("mesa\tNCFS\ncosa\tNCFS\n", ts);
  const ClassRegistry reg = registry_from_lexicon(lex, ts);
  const std::vector<std::string> words = {"mesa", "mesa", "cosa"};
  const SuffixTable t = train_guesser(words, lex, reg, {.suffix_limit = 3, .min_support = 2});
  EXPECT_NE(t.find("esa"), nullptr);
  EXPECT_EQ(t.find("osa"), nullptr);
  EXPECT_NE(t.find("sa"), nullptr);
}

// Forms ending in "a" jointly carry a tag set that no single lexicon form
// has, so the learned entry falls back to the open class until the manual
// class is merged into the registry.
TEST(TrainGuesserTest, UnvalidatedClassFallsBackToOpen) {
  const Tagset ts = SpanishTagset();
  const Lexicon lex =
      parse_lexicon("blanca\tADJGFS\nmesa\tNCFS\ncanta\tVLPI3S\ncoma\tVLPS1S VLPS3S\n", ts);
  const ClassRegistry reg = registry_from_lexicon(lex, ts);
  const std::vector<std::string> words = {"blanca", "mesa", "canta", "coma"};
  const SuffixTable learned = train_guesser(words, lex, reg, {.suffix_limit = 1, .min_support = 1});
  EXPECT_EQ(learned.find("a")->cls, reg.open_class());

  const SuffixTable manual =
      load_suffixes("a\tADJGFS NCFS VLPI3S VLPS1S VLPS3S\n", ts);
  const ClassRegistry merged = merge_manual_classes(reg, manual);
  const SuffixTable relearned =
      train_guesser(words, lex, merged, {.suffix_limit = 1, .min_support = 1});
  EXPECT_EQ(relearned.find("a")->cls.size(), 5u);
}

TEST(SuffixStatsTest, CountsGeneralEntries) {
  const Tagset ts = SpanishTagset();
  const SuffixTable t = load_suffixes(
      "a\tADJGFS NCFS\nmente\tADVGR\n# @enclitic\narlo\tVCLI\n# @foreign\ning\tFW\n", ts);
  const SuffixStats s = suffix_stats(t);
  EXPECT_EQ(s.num_suffixes, 2u);
  EXPECT_EQ(s.total_tags, 3u);
  EXPECT_DOUBLE_EQ(s.tags_per_suffix, 1.5);
  EXPECT_EQ(s.max_suffix_len, 5u);
  EXPECT_EQ(s.enclitic_suffixes, 1u);
  EXPECT_EQ(s.foreign_suffixes, 1u);
}

}  // namespace
}  // namespace actag
