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

#ifndef ACTAG_TESTS_ORACLE_H_
#define ACTAG_TESTS_ORACLE_H_

// Reference implementations and random generators for tests. Everything
// here is deliberately naive: exhaustive path enumeration in long double.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "actag/hmm.h"
#include "actag/tagset.h"

namespace actag::testing {

// Tags T0..T{n-1}; open class is the whole tagset.
Tagset numbered_tagset(std::size_t num_tags);

// Registry of the open class plus up to extra_classes random subsets.
ClassRegistry random_registry(std::mt19937_64& rng, const Tagset& tagset,
                              std::size_t extra_classes);

// Random stochastic parameters over the given registry.
HmmModel random_model(std::mt19937_64& rng, const Tagset& tagset,
                      const ClassRegistry& registry);

// Mostly registry classes, with an occasional unregistered subset when
// allow_unregistered is set.
ClassSequence random_sequence(std::mt19937_64& rng, const HmmModel& model, std::size_t length,
                              bool allow_unregistered);

// P(path, sequence) computed straight from the definition.
long double joint_probability(const HmmModel& model, const ClassSequence& seq,
                              const std::vector<TagId>& path);

struct BruteForce {
  long double total = 0;  // P(sequence)
  long double best = 0;   // max over paths
  std::vector<TagId> best_path;
  // gamma[pos][tag], xi[pos][from][to], normalized by total.
  std::vector<std::vector<long double>> gamma;
  std::vector<std::vector<std::vector<long double>>> xi;
};

// Enumerates every admissible path.
BruteForce enumerate(const HmmModel& model, const ClassSequence& seq);

// Unscaled forward pass in long double; log P(sequence).
long double forward_log_likelihood(const HmmModel& model, const ClassSequence& seq);

// A generating HMM over tags with class emissions, used for synthetic
// corpora with gold tags.
struct Generator {
  HmmModel model;

  struct Sample {
    std::vector<TagId> tags;
    ClassSequence classes;
  };
  Sample sample(std::mt19937_64& rng, std::size_t length) const;
};

// Three tags A, B, C; classes {A}, {A B}, {B C}, {A B C}. Strongly
// structured transitions so that context resolves most ambiguity.
Generator three_tag_generator();

double path_accuracy(const std::vector<std::vector<TagId>>& gold,
                     const std::vector<std::vector<TagId>>& predicted);

}  // namespace actag::testing

#endif  // ACTAG_TESTS_ORACLE_H_
