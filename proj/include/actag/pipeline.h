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

#ifndef ACTAG_PIPELINE_H_
#define ACTAG_PIPELINE_H_

// End-to-end tagging, incremental training and evaluation.
//
// Raw text goes through multiword joining, tokenization, class assignment
// (lexicon, then suffix table, then open class), Viterbi decoding per
// sentence, word_TAG formatting and postediting.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "actag/guesser.h"
#include "actag/hmm.h"
#include "actag/lexicon.h"
#include "actag/tagset.h"
#include "actag/tokenizer.h"

namespace actag {

struct PipelineConfig {
  std::string full_stop_tag = "FS";
  // Assigned to unknown words whose longest suffix match is an enclitic entry.
  std::string vcli_tag = "VCLI";
  // Class for number and date tokens; without it they take the open class.
  std::optional<std::string> numeral_tag;
  // Class for punctuation missing from the lexicon.
  std::optional<std::string> punct_tag;
  // Gold tags left out of the second accuracy figure (foreign words).
  std::vector<std::string> exclusion_tags;
  TrainOptions train;
};

struct Resources {
  Tagset tagset;
  Lexicon lexicon;
  SuffixTable suffixes;
  std::vector<std::string> multiwords;
  std::vector<std::string> abbreviations;
  std::vector<PosteditRule> postedit_rules;
  PipelineConfig config;
};

// Registry used for training: lexicon classes merged with the manual suffix
// classes, plus the configured numeral/punctuation/VCLI singletons.
ClassRegistry build_registry(const Resources& resources);

HmmModel initial_model(const Resources& resources, const BiasSpec& biases);

AmbiguityClass candidate_class(const Resources& resources, const Token& token);
ClassSequence candidate_classes(const Resources& resources, const Sentence& sentence);

std::vector<Sentence> segment(const Resources& resources, std::string_view raw);

// Sentences rebuilt from a word_TAG file, for tagging with gold tokenization.
std::vector<Sentence> sentences_from_tagged(std::string_view tagged);

// One line per sentence, newline-terminated, postedited.
std::string tag_sentences(const HmmModel& model, const Resources& resources,
                          std::span<const Sentence> sentences);
std::string tag_text(const HmmModel& model, const Resources& resources,
                     std::string_view raw);

struct EvalReport {
  std::size_t token_count = 0;
  std::size_t errors_all = 0;
  // Errors on tokens whose gold tag is not excluded.
  std::size_t errors_excl = 0;
  std::size_t excluded_tokens = 0;
  double accuracy_all = 0.0;   // 100 * (N - errors_all) / N
  double accuracy_excl = 0.0;  // 100 * (N - errors_excl) / N
  // 100 * (M - errors_excl) / M over the M non-excluded tokens.
  double accuracy_reduced = 0.0;
};

// Both inputs in word_TAG format with identical tokens. Throws FormatError
// naming the first divergent position otherwise.
EvalReport evaluate(std::string_view system_tagged, std::string_view gold_tagged,
                    std::span<const std::string> exclusion_tags);

struct CorpusFile {
  std::string name;
  std::string text;
};

struct CurveRow {
  std::string label;  // "No training", "001-003", ...
  std::size_t files = 0;
  std::size_t word_count = 0;
  std::optional<double> train_seconds;
  std::optional<EvalReport> eval;
};

struct TrainRun {
  // Cumulative file counts; 0 is the untrained model.
  std::vector<std::size_t> block_boundaries;
  std::vector<HmmModel> checkpoints;
  std::vector<CurveRow> curve;
};

// Number of whitespace-separated words, as `wc -w` counts them.
std::size_t word_count(std::string_view text);

// For every schedule point (cumulative number of files), trains from the
// initial biased model on that prefix of the corpus and, when a gold test
// text is given, evaluates the checkpoint on it. The untrained model is
// always the first row.
TrainRun train_incremental(std::span<const CorpusFile> corpus, const Resources& resources,
                           const BiasSpec& biases, std::span<const std::size_t> schedule,
                           const std::optional<std::string>& gold_test);

std::string emit_curve_text(const TrainRun& run);
std::string emit_curve_csv(const TrainRun& run);

}  // namespace actag

#endif  // ACTAG_PIPELINE_H_
