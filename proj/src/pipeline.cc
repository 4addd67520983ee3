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

#include "actag/pipeline.h"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include <fmt/format.h>

#include "actag/error.h"
#include "actag/text.h"

namespace actag {
namespace {

AmbiguityClass singleton(const Tagset& tagset, const std::string& name) {
  if (!tagset.contains(name)) {
    throw FormatError(fmt::format("configured tag '{}' is not in the tagset", name));
  }
  return AmbiguityClass({Tag(name)});
}

bool has_enclitic_entries(const SuffixTable& table) {
  return std::any_of(table.entries().begin(), table.entries().end(), [](const auto& kv) {
    return kv.second.category == SuffixCategory::kEnclitic;
  });
}

std::string format_duration(double seconds) {
  const auto total = static_cast<long long>(seconds + 0.5);
  const long long h = total / 3600, m = (total / 60) % 60, s = total % 60;
  if (h > 0) return fmt::format("{}h {:02}'{:02}''", h, m, s);
  return fmt::format("{:02}'{:02}''", m, s);
}

std::string schedule_label(std::size_t files) {
  return files == 0 ? "No training" : fmt::format("001-{:03}", files);
}

}  // namespace

ClassRegistry build_registry(const Resources& r) {
  ClassRegistry merged = merge_manual_classes(registry_from_lexicon(r.lexicon, r.tagset),
                                              r.suffixes);
  std::vector<AmbiguityClass> extra(merged.classes().begin(), merged.classes().end());
  if (r.config.numeral_tag) extra.push_back(singleton(r.tagset, *r.config.numeral_tag));
  if (r.config.punct_tag) extra.push_back(singleton(r.tagset, *r.config.punct_tag));
  if (has_enclitic_entries(r.suffixes)) extra.push_back(singleton(r.tagset, r.config.vcli_tag));
  return ClassRegistry(std::move(extra), merged.open_class());
}

HmmModel initial_model(const Resources& resources, const BiasSpec& biases) {
  return init_model(resources.tagset, build_registry(resources), biases);
}

AmbiguityClass candidate_class(const Resources& r, const Token& token) {
  if (const auto* cls = r.lexicon.lookup(token.text)) return *cls;
  switch (token.kind) {
    case TokenKind::kNumber:
    case TokenKind::kDate:
      if (r.config.numeral_tag) return singleton(r.tagset, *r.config.numeral_tag);
      return r.tagset.open_class();
    case TokenKind::kPunctuation:
      if (r.config.punct_tag) return singleton(r.tagset, *r.config.punct_tag);
      return r.tagset.open_class();
    case TokenKind::kWord:
    case TokenKind::kMultiword:
      break;
  }
  if (const auto* e = r.suffixes.longest_match(token.text)) {
    if (e->category == SuffixCategory::kEnclitic) return singleton(r.tagset, r.config.vcli_tag);
    return e->cls;
  }
  return r.tagset.open_class();
}

ClassSequence candidate_classes(const Resources& r, const Sentence& sentence) {
  ClassSequence seq;
  seq.reserve(sentence.tokens.size());
  for (const auto& tok : sentence.tokens) seq.push_back(candidate_class(r, tok));
  return seq;
}

std::vector<Sentence> segment(const Resources& r, std::string_view raw) {
  const std::string joined = preprocess_multiwords(raw, r.multiwords);
  return Tokenizer(r.abbreviations).tokenize(joined);
}

std::vector<Sentence> sentences_from_tagged(std::string_view tagged) {
  std::vector<Sentence> out;
  for (const auto& line : parse_tagged_text(tagged)) {
    Sentence s;
    for (const auto& tt : line) {
      s.tokens.push_back(Token{.text = tt.text, .kind = classify_token(tt.text)});
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string tag_sentences(const HmmModel& model, const Resources& r,
                          std::span<const Sentence> sentences) {
  std::string out;
  std::vector<Tag> tags;
  for (const auto& s : sentences) {
    if (s.tokens.empty()) continue;
    const auto path = viterbi(model, candidate_classes(r, s));
    tags.clear();
    for (TagId id : path) tags.push_back(model.tagset().tag(id));
    out += format_output(s, tags);
    out.push_back('\n');
  }
  return postedit(out, r.postedit_rules, Tag(r.config.full_stop_tag));
}

std::string tag_text(const HmmModel& model, const Resources& r, std::string_view raw) {
  return tag_sentences(model, r, segment(r, raw));
}

EvalReport evaluate(std::string_view system_tagged, std::string_view gold_tagged,
                    std::span<const std::string> exclusion_tags) {
  const auto sys = parse_tagged_text(system_tagged);
  const auto gold = parse_tagged_text(gold_tagged);
  const std::unordered_set<std::string> excluded(exclusion_tags.begin(),
                                                 exclusion_tags.end());
  std::vector<TaggedToken> flat_sys, flat_gold;
  for (const auto& l : sys) flat_sys.insert(flat_sys.end(), l.begin(), l.end());
  for (const auto& l : gold) flat_gold.insert(flat_gold.end(), l.begin(), l.end());

  const std::size_t n = std::min(flat_sys.size(), flat_gold.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (flat_sys[i].text != flat_gold[i].text) {
      throw FormatError(fmt::format("misaligned at token {}: system '{}' vs gold '{}'", i + 1,
                                    flat_sys[i].text, flat_gold[i].text));
    }
  }
  if (flat_sys.size() != flat_gold.size()) {
    throw FormatError(fmt::format("misaligned at token {}: system has {} tokens, gold {}",
                                  n + 1, flat_sys.size(), flat_gold.size()));
  }

  EvalReport rep;
  rep.token_count = n;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ex = excluded.contains(flat_gold[i].tag);
    rep.excluded_tokens += ex;
    if (flat_sys[i].tag != flat_gold[i].tag) {
      ++rep.errors_all;
      if (!ex) ++rep.errors_excl;
    }
  }
  auto pct = [](std::size_t total, std::size_t errors) {
    return total == 0 ? 100.0
                      : 100.0 * static_cast<double>(total - errors) /
                            static_cast<double>(total);
  };
  rep.accuracy_all = pct(n, rep.errors_all);
  rep.accuracy_excl = pct(n, rep.errors_excl);
  rep.accuracy_reduced = pct(n - rep.excluded_tokens, rep.errors_excl);
  return rep;
}

std::size_t word_count(std::string_view text) { return split_whitespace(text).size(); }

TrainRun train_incremental(std::span<const CorpusFile> corpus, const Resources& r,
                           const BiasSpec& biases, std::span<const std::size_t> schedule,
                           const std::optional<std::string>& gold_test) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i > 0 && schedule[i] <= schedule[i - 1]) {
      throw Error("schedule must be strictly increasing");
    }
    if (schedule[i] > corpus.size()) {
      throw Error(fmt::format("schedule point {} exceeds the {} corpus files", schedule[i],
                              corpus.size()));
    }
  }

  const HmmModel initial = initial_model(r, biases);
  std::optional<std::vector<Sentence>> test_sentences;
  if (gold_test) test_sentences = sentences_from_tagged(*gold_test);

  TrainRun run;
  auto add_row = [&](std::size_t files, HmmModel model, std::optional<double> seconds,
                     std::size_t words) {
    CurveRow row{.label = schedule_label(files),
                 .files = files,
                 .word_count = words,
                 .train_seconds = seconds,
                 .eval = std::nullopt};
    if (test_sentences) {
      row.eval = evaluate(tag_sentences(model, r, *test_sentences), *gold_test,
                          r.config.exclusion_tags);
    }
    run.block_boundaries.push_back(files);
    run.checkpoints.push_back(std::move(model));
    run.curve.push_back(std::move(row));
  };

  add_row(0, initial, std::nullopt, 0);

  std::vector<ClassSequence> sequences;
  std::size_t words = 0;
  std::size_t loaded = 0;
  for (std::size_t point : schedule) {
    if (point == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    for (; loaded < point; ++loaded) {
      words += word_count(corpus[loaded].text);
      for (const auto& s : segment(r, corpus[loaded].text)) {
        sequences.push_back(candidate_classes(r, s));
      }
    }
    if (sequences.empty()) throw Error(fmt::format("no sentences in the first {} files", point));
    auto trained = baum_welch(initial, sequences, r.config.train);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    add_row(point, std::move(trained.model), elapsed.count(), words);
  }
  return run;
}

std::string emit_curve_text(const TrainRun& run) {
  std::string out = fmt::format("{:<14} {:>10} {:>14} {:>14} {:>16}\n", "Training files",
                                "Word count", "Training time", "Errors", "Accuracy");
  for (const auto& row : run.curve) {
    const std::string time = row.train_seconds ? format_duration(*row.train_seconds) : "--";
    std::string errors = "--", accuracy = "--";
    if (row.eval) {
      errors = fmt::format("{} - {}", row.eval->errors_all, row.eval->errors_excl);
      accuracy = fmt::format("{:.2f} - {:.2f}", row.eval->accuracy_all, row.eval->accuracy_excl);
    }
    out += fmt::format("{:<14} {:>10} {:>14} {:>14} {:>16}\n", row.label, row.word_count,
                       time, errors, accuracy);
  }
  return out;
}

std::string emit_curve_csv(const TrainRun& run) {
  std::string out =
      "label,files,word_count,train_seconds,errors_all,errors_excl,accuracy_all,accuracy_excl\n";
  for (const auto& row : run.curve) {
    out += fmt::format("{},{},{},", row.label, row.files, row.word_count);
    out += row.train_seconds ? fmt::format("{:.3f}", *row.train_seconds) : "";
    if (row.eval) {
      out += fmt::format(",{},{},{:.2f},{:.2f}\n", row.eval->errors_all, row.eval->errors_excl,
                         row.eval->accuracy_all, row.eval->accuracy_excl);
    } else {
      out += ",,,,\n";
    }
  }
  return out;
}

}  // namespace actag
