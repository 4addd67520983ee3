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

#ifndef ACTAG_HMM_H_
#define ACTAG_HMM_H_

// First-order hidden Markov model whose states are tags and whose
// observations are ambiguity classes.
//
//   initial(t)        P(first tag = t)
//   transition(i, j)  P(tag j | previous tag i)
//   emission(t, c)    P(class c | tag t), zero unless t is in c
//
// Emission rows run over the registry classes containing the tag. A class
// outside the registry is still decodable: every admissible tag emits it
// with weight 1, so only the transitions decide between them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "actag/tagset.h"

namespace actag {

// The floor every re-estimated probability is kept at or above.
inline constexpr double kDefaultSmoothingFloor = 1e-7;

struct SymbolBias {
  AmbiguityClass cls;
  std::vector<Tag> favored;
  double weight = 4.0;  // > 1
};

enum class BiasDirection { kFavored, kDisfavored };

struct TransitionBias {
  Tag from;
  std::vector<Tag> to;
  BiasDirection direction = BiasDirection::kFavored;
  // Multiplier (> 1) when favored; the small positive cell value when
  // disfavored.
  double value = 4.0;
};

struct BiasSpec {
  std::vector<SymbolBias> symbol_biases;
  std::vector<TransitionBias> transition_biases;
};

struct BiasDefaults {
  double favored_weight = 4.0;
  double disfavored_constant = 1e-4;
};

// Lines:
//   SYM   class tags | favored tags | weight
//   TRANS from-tag | to tags | favored|disfavored | value
// The trailing value may be omitted to take the default.
BiasSpec parse_biases(std::string_view text, const Tagset& tagset,
                      const BiasDefaults& defaults = {});

// An ambiguity class resolved against a model.
struct Observation {
  std::optional<std::size_t> class_index;  // registry index, if registered
  std::vector<TagId> tags;                  // ascending
};

using ClassSequence = std::vector<AmbiguityClass>;

class HmmModel {
 public:
  // emission[k][m] is P(class k | tag class_members(k)[m]). Throws
  // FormatError if the shapes or the stochastic invariants do not hold.
  HmmModel(Tagset tagset, ClassRegistry registry, std::vector<double> initial,
           std::vector<double> transition, std::vector<std::vector<double>> emission);

  const Tagset& tagset() const { return tagset_; }
  const ClassRegistry& registry() const { return registry_; }
  std::size_t num_tags() const { return tagset_.size(); }

  double initial(TagId tag) const { return initial_[tag]; }
  double transition(TagId from, TagId to) const { return transition_[from * num_tags() + to]; }
  double emission(TagId tag, std::size_t class_index) const;
  double emission(TagId tag, const AmbiguityClass& cls) const;
  double emission(const Observation& obs, std::size_t member) const {
    return obs.class_index ? emission_[*obs.class_index][member] : 1.0;
  }

  std::span<const TagId> class_members(std::size_t class_index) const {
    return members_[class_index];
  }
  std::span<const double> initial_probs() const { return initial_; }
  std::span<const double> transition_probs() const { return transition_; }
  std::span<const double> emission_row(std::size_t class_index) const {
    return emission_[class_index];
  }
  // (class index, member position) of every registry class containing tag.
  std::span<const std::pair<std::size_t, std::size_t>> tag_classes(TagId tag) const {
    return tag_classes_[tag];
  }

  // Throws FormatError for tags outside the tagset.
  Observation observe(const AmbiguityClass& cls) const;

  double log_initial(TagId tag) const { return log_initial_[tag]; }
  double log_transition(TagId from, TagId to) const {
    return log_transition_[from * num_tags() + to];
  }

  friend bool operator==(const HmmModel& a, const HmmModel& b) {
    return a.tagset_ == b.tagset_ && a.registry_ == b.registry_ &&
           a.initial_ == b.initial_ && a.transition_ == b.transition_ &&
           a.emission_ == b.emission_;
  }

 private:
  void validate(double tolerance) const;

  Tagset tagset_;
  ClassRegistry registry_;
  std::vector<double> initial_;
  std::vector<double> transition_;  // row-major, num_tags x num_tags
  std::vector<std::vector<double>> emission_;
  std::vector<std::vector<TagId>> members_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tag_classes_;
  std::vector<double> log_initial_;
  std::vector<double> log_transition_;
};

// Uniform initial and transition distributions and uniform emissions over
// each tag's admissible classes, then biases: symbol biases multiply the
// favored tags' emissions of a class (rows renormalized per tag), favored
// transitions are multiplied, disfavored ones set to their constant, and
// rows are renormalized.
HmmModel init_model(const Tagset& tagset, const ClassRegistry& registry,
                    const BiasSpec& biases);

// Posterior marginals of one sequence. Positions only carry mass on the
// tags of their class.
class Posteriors {
 public:
  std::size_t length() const { return active_.size(); }
  double log_likelihood() const { return log_likelihood_; }
  std::span<const TagId> active(std::size_t pos) const { return active_[pos]; }

  double gamma(std::size_t pos, TagId tag) const;
  // P(tag at pos = from, tag at pos+1 = to); pos < length() - 1.
  double xi(std::size_t pos, TagId from, TagId to) const;

  // Dense values over active tags, for accumulation.
  std::span<const double> gamma_row(std::size_t pos) const { return gamma_[pos]; }
  std::span<const double> xi_block(std::size_t pos) const { return xi_[pos]; }

 private:
  friend Posteriors forward_backward(const HmmModel&, std::span<const Observation>);

  std::vector<std::vector<TagId>> active_;
  std::vector<std::vector<double>> gamma_;
  std::vector<std::vector<double>> xi_;  // row-major active(pos) x active(pos+1)
  double log_likelihood_ = 0.0;
};

// Scaled forward-backward. Throws NumericError when the sequence has zero
// probability and Error when it is empty.
Posteriors forward_backward(const HmmModel& model, std::span<const Observation> seq);
Posteriors forward_backward(const HmmModel& model, const ClassSequence& seq);

struct TrainOptions {
  std::size_t iterations = 1;
  double smoothing_floor = kDefaultSmoothingFloor;
};

struct TrainStats {
  // Total log-likelihood of the data under the model entering each iteration.
  std::vector<double> log_likelihood;
  std::size_t iterations = 0;
};

struct TrainResult {
  HmmModel model;
  TrainStats stats;
};

// Expectation-maximization over independent sentences. Each M-step is the
// maximum-likelihood estimate subject to every probability >= the floor;
// rows with no expected counts keep their previous values.
TrainResult baum_welch(const HmmModel& model, std::span<const ClassSequence> sequences,
                       const TrainOptions& options = {});

// Most probable tag path; ties go to the smaller tag in canonical order.
std::vector<TagId> viterbi(const HmmModel& model, std::span<const Observation> seq);
std::vector<TagId> viterbi(const HmmModel& model, const ClassSequence& seq);

// Natural-log joint probability of a path and the sequence.
double path_log_probability(const HmmModel& model, const ClassSequence& seq,
                            std::span<const TagId> path);

// Versioned text format; probabilities are written as hexadecimal floats so
// that a round trip is bit-exact.
std::string serialize_model(const HmmModel& model);
// Throws VersionError on a version mismatch and FormatError on a corrupt
// payload.
HmmModel deserialize_model(std::string_view data);

}  // namespace actag

#endif  // ACTAG_HMM_H_
