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

#include "actag/lexicon.h"

#include <gtest/gtest.h>

#include "actag/error.h"

namespace actag {
namespace {

Tagset SmallTagset() {
  return parse_tagset("ART\nNCFS\nNP\nPRON\nVLPI3S\nOPEN: NCFS NP VLPI3S\n");
}

TEST(LexiconTest, LookupExactThenLowercase) {
  const Tagset ts = SmallTagset();
  const Lexicon lex = parse_lexicon("la\tART PRON\nÁrbol\tNCFS\n", ts);
  ASSERT_NE(lex.lookup("La"), nullptr);
  EXPECT_EQ(lex.lookup("La")->to_string(), "ART PRON");
  ASSERT_NE(lex.lookup("ÁRBOL"), nullptr);
  EXPECT_EQ(lex.lookup("árbol")->to_string(), "NCFS");
  EXPECT_EQ(lex.lookup("perro"), nullptr);
}

TEST(LexiconTest, RepeatedFormsAreUnioned) {
  const Tagset ts = SmallTagset();
  const Lexicon lex = parse_lexicon("casa\tNCFS\n# comment\n\nCasa\tVLPI3S\n", ts);
  EXPECT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex.lookup("casa")->to_string(), "NCFS VLPI3S");
}

TEST(LexiconTest, ErrorsNameTheLine) {
  const Tagset ts = SmallTagset();
  try {
    parse_lexicon("la\tART\ncasa\tXX\n", ts);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_lexicon("la ART\n", ts), FormatError);
  EXPECT_THROW(parse_lexicon("la\t\n", ts), FormatError);
}

}  // namespace
}  // namespace actag
