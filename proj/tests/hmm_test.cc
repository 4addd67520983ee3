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

#include "actag/hmm.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "actag/error.h"
#include "oracle.h"

namespace actag {
namespace {

using ::actag::testing::enumerate;
using ::actag::testing::forward_log_likelihood;
using ::actag::testing::numbered_tagset;
using ::actag::testing::random_model;
using ::actag::testing::random_registry;
using ::actag::testing::random_sequence;

TEST(HmmModelTest, RejectsNonStochasticRows) {
  const Tagset ts = numbered_tagset(2);
  const ClassRegistry reg({}, ts.open_class());
  EXPECT_THROW(HmmModel(ts, reg, {0.5, 0.6}, {0.5, 0.5, 0.5, 0.5}, {{1.0, 1.0}}), FormatError);
  EXPECT_THROW(HmmModel(ts, reg, {0.5, 0.5}, {0.5, 0.5, 0.5}, {{1.0, 1.0}}), FormatError);
  EXPECT_THROW(HmmModel(ts, reg, {0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}, {{0.5, 1.0}}), FormatError);
  EXPECT_NO_THROW(HmmModel(ts, reg, {0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}, {{1.0, 1.0}}));
}

TEST(InitModelTest, UniformWithoutBiases) {
  const Tagset ts = numbered_tagset(3);
  const ClassRegistry reg({ts.parse_class("T0"), ts.parse_class("T0 T1")}, ts.open_class());
  const HmmModel m = init_model(ts, reg, {});
  for (TagId i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(m.initial(i), 1.0 / 3);
    for (TagId j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(m.transition(i, j), 1.0 / 3);
  }
  // T0 is in three classes, T1 in two, T2 in one.
  EXPECT_DOUBLE_EQ(m.emission(0, ts.parse_class("T0")), 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.emission(1, ts.parse_class("T0 T1")), 0.5);
  EXPECT_DOUBLE_EQ(m.emission(2, ts.open_class()), 1.0);
}

TEST(InitModelTest, BiasesShiftMassAndKeepRowsStochastic) {
  const Tagset ts = numbered_tagset(3);
  const ClassRegistry reg({ts.parse_class("T0 T1")}, ts.open_class());
  const std::string spec =
      "SYM T0 T1 | T0 | 4\n"
      "TRANS T0 | T1 | favored\n"
      "TRANS T0 | T2 | disfavored | 0.001\n";
  const BiasSpec biases = parse_biases(spec, ts);
  const HmmModel m = init_model(ts, reg, biases);
  // Favored emission grows relative to the unbiased share of 1/2.
  EXPECT_GT(m.emission(0, ts.parse_class("T0 T1")), 0.5);
  EXPECT_DOUBLE_EQ(m.emission(1, ts.parse_class("T0 T1")), 0.5);
  double row = 0;
  for (TagId j = 0; j < 3; ++j) row += m.transition(0, j);
  EXPECT_NEAR(row, 1.0, 1e-12);
  EXPECT_GT(m.transition(0, 1), m.transition(0, 0));
  EXPECT_LT(m.transition(0, 2), 0.01);
  EXPECT_GT(m.transition(0, 2), 0.0);
}

TEST(ParseBiasesTest, DefaultsAndErrors) {
  const Tagset ts = numbered_tagset(2);
  const BiasSpec b = parse_biases("TRANS T0 | T1 | disfavored\nSYM T0 T1 | T1\n", ts,
                                  {.favored_weight = 3.0, .disfavored_constant = 1e-5});
  ASSERT_EQ(b.transition_biases.size(), 1u);
  EXPECT_DOUBLE_EQ(b.transition_biases[0].value, 1e-5);
  ASSERT_EQ(b.symbol_biases.size(), 1u);
  EXPECT_DOUBLE_EQ(b.symbol_biases[0].weight, 3.0);
  EXPECT_THROW(parse_biases("FOO T0\n", ts), FormatError);
  EXPECT_THROW(parse_biases("TRANS T0 | T9 | favored\n", ts), FormatError);
  EXPECT_THROW(parse_biases("TRANS T0 | T1 | sideways\n", ts), FormatError);
}

TEST(ForwardBackwardTest, MatchesEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Tagset ts = numbered_tagset(2 + trial % 3);
    const HmmModel m = random_model(rng, ts, random_registry(rng, ts, 3));
    const ClassSequence seq = random_sequence(rng, m, 2 + trial % 3, true);
    const auto bf = enumerate(m, seq);
    const Posteriors post = forward_backward(m, seq);
    EXPECT_NEAR(post.log_likelihood(), std::log(static_cast<double>(bf.total)), 1e-9);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (TagId t = 0; t < ts.size(); ++t) {
        EXPECT_NEAR(post.gamma(i, t), static_cast<double>(bf.gamma[i][t]), 1e-9);
        if (i + 1 < seq.size()) {
          for (TagId u = 0; u < ts.size(); ++u) {
            EXPECT_NEAR(post.xi(i, t, u), static_cast<double>(bf.xi[i][t][u]), 1e-9);
          }
        }
      }
    }
  }
}

TEST(ForwardBackwardTest, LongSequenceLikelihoodAndNormalization) {
  std::mt19937_64 rng(5);
  const Tagset ts = numbered_tagset(5);
  const HmmModel m = random_model(rng, ts, random_registry(rng, ts, 4));
  const ClassSequence seq = random_sequence(rng, m, 300, true);
  const Posteriors post = forward_backward(m, seq);
  EXPECT_NEAR(post.log_likelihood(), static_cast<double>(forward_log_likelihood(m, seq)),
              1e-9 * std::abs(post.log_likelihood()));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    double sum = 0;
    for (double g : post.gamma_row(i)) sum += g;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(ForwardBackwardTest, Errors) {
  const Tagset ts = numbered_tagset(2);
  const ClassRegistry reg({ts.parse_class("T0"), ts.parse_class("T1")}, ts.open_class());
  // T0 can never follow T0. Registry order: {T0}, {T0 T1}, {T1}.
  const HmmModel m(ts, reg, {0.5, 0.5}, {0.0, 1.0, 0.5, 0.5},
                   {{0.5}, {0.5, 0.5}, {0.5}});
  const ClassSequence bad = {ts.parse_class("T0"), ts.parse_class("T0")};
  EXPECT_THROW(forward_backward(m, bad), NumericError);
  EXPECT_THROW(forward_backward(m, ClassSequence{}), Error);
}

TEST(ViterbiTest, MatchesEnumeration) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Tagset ts = numbered_tagset(2 + trial % 4);
    const HmmModel m = random_model(rng, ts, random_registry(rng, ts, 3));
    const ClassSequence seq = random_sequence(rng, m, 1 + trial % 4, true);
    const auto bf = enumerate(m, seq);
    const auto path = viterbi(m, seq);
    ASSERT_EQ(path.size(), seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      EXPECT_TRUE(seq[i].contains(ts.tag(path[i])));
    }
    EXPECT_NEAR(path_log_probability(m, seq, path), std::log(static_cast<double>(bf.best)),
                1e-10);
  }
}

TEST(ViterbiTest, TiesGoToSmallerTag) {
  const Tagset ts = numbered_tagset(3);
  const HmmModel m = init_model(ts, ClassRegistry({}, ts.open_class()), {});
  const ClassSequence seq(4, ts.open_class());
  EXPECT_EQ(viterbi(m, seq), (std::vector<TagId>{0, 0, 0, 0}));
}

TEST(BaumWelchTest, LikelihoodNeverDecreases) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Tagset ts = numbered_tagset(4);
    const HmmModel m = random_model(rng, ts, random_registry(rng, ts, 4));
    std::vector<ClassSequence> data;
    for (int s = 0; s < 10; ++s) data.push_back(random_sequence(rng, m, 6, false));
    const TrainResult r = baum_welch(m, data, {.iterations = 10});
    ASSERT_EQ(r.stats.log_likelihood.size(), 10u);
    for (std::size_t i = 1; i < r.stats.log_likelihood.size(); ++i) {
      EXPECT_GE(r.stats.log_likelihood[i], r.stats.log_likelihood[i - 1] - 1e-8);
    }
  }
}

TEST(BaumWelchTest, FloorHoldsAndUnseenRowsKept) {
  const Tagset ts = numbered_tagset(3);
  const ClassRegistry reg({ts.parse_class("T0"), ts.parse_class("T1")}, ts.open_class());
  const HmmModel m = init_model(ts, reg, {});
  // T2 never occurs, so its transition row has no counts.
  const std::vector<ClassSequence> data(5, {ts.parse_class("T0"), ts.parse_class("T1"),
                                            ts.parse_class("T0")});
  const TrainResult r = baum_welch(m, data, {.iterations = 3, .smoothing_floor = 1e-7});
  for (double p : r.model.transition_probs()) EXPECT_GE(p, 1e-7);
  for (double p : r.model.initial_probs()) EXPECT_GE(p, 1e-7);
  for (TagId j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(r.model.transition(2, j), m.transition(2, j));
  EXPECT_GT(r.model.transition(0, 1), 0.99);
}

TEST(SerializationTest, RoundTripIsExact) {
  std::mt19937_64 rng(2);
  const Tagset ts = numbered_tagset(4);
  const HmmModel m = random_model(rng, ts, random_registry(rng, ts, 3));
  const std::string text = serialize_model(m);
  EXPECT_EQ(deserialize_model(text), m);
  EXPECT_EQ(serialize_model(deserialize_model(text)), text);
}

TEST(SerializationTest, VersionAndCorruption) {
  const Tagset ts = numbered_tagset(2);
  const HmmModel m = init_model(ts, ClassRegistry({}, ts.open_class()), {});
  std::string text = serialize_model(m);
  std::string wrong_version = text;
  wrong_version.replace(wrong_version.find(" 1"), 2, " 9");
  EXPECT_THROW(deserialize_model(wrong_version), VersionError);
  EXPECT_THROW(deserialize_model(text.substr(0, text.size() / 2)), FormatError);
  EXPECT_THROW(deserialize_model("garbage"), FormatError);
}

}  // namespace
}  // namespace actag
