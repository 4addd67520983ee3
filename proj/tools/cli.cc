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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "actag/error.h"
#include "actag/guesser.h"
#include "actag/hmm.h"
#include "actag/lexicon.h"
#include "actag/pipeline.h"
#include "actag/tagset.h"
#include "actag/text.h"
#include "actag/tokenizer.h"
#include "json.hpp"

namespace actag::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string config;
  std::string tagset, lexicon, suffixes, biases, mwu, abbrev, postedit;
  std::vector<std::string> exclude_tags;
  std::size_t suffix_limit = 5;
  std::size_t min_support = 1;
  std::size_t iterations = 1;
  double floor = kDefaultSmoothingFloor;
  double favored_weight = 4.0;
  double disfavored_constant = 1e-4;
  std::string full_stop_tag = "FS";
  std::string vcli_tag = "VCLI";
  std::string numeral_tag, punct_tag;
  std::string schedule;
  std::string out;
  std::string model;
  std::string test;
  std::vector<std::string> inputs;
};

std::vector<std::string_view> split_fields(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

// Config file: a JSON object whose keys are the long flag names. Relative
// paths are taken from the config file's directory. Flags override it.
void apply_config(const std::string& path, Settings& s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("{}: {}", path, e.what()));
  }
  if (!j.is_object()) throw FormatError(fmt::format("{}: expected a JSON object", path));
  const fs::path base = fs::path(path).parent_path();
  auto path_key = [&](const char* key, std::string& field) {
    if (!j.contains(key)) return;
    fs::path p = j.at(key).get<std::string>();
    field = (p.is_relative() ? base / p : p).string();
  };
  auto str_key = [&](const char* key, std::string& field) {
    if (j.contains(key)) field = j.at(key).get<std::string>();
  };
  try {
    path_key("tagset", s.tagset);
    path_key("lexicon", s.lexicon);
    path_key("suffixes", s.suffixes);
    path_key("biases", s.biases);
    path_key("mwu", s.mwu);
    path_key("abbrev", s.abbrev);
    path_key("postedit", s.postedit);
    path_key("model", s.model);
    path_key("test", s.test);
    if (j.contains("exclude-tags")) {
      s.exclude_tags = j.at("exclude-tags").get<std::vector<std::string>>();
    }
    if (j.contains("suffix-limit")) s.suffix_limit = j.at("suffix-limit").get<std::size_t>();
    if (j.contains("min-support")) s.min_support = j.at("min-support").get<std::size_t>();
    if (j.contains("iterations")) s.iterations = j.at("iterations").get<std::size_t>();
    if (j.contains("floor")) s.floor = j.at("floor").get<double>();
    if (j.contains("favored-weight")) s.favored_weight = j.at("favored-weight").get<double>();
    if (j.contains("disfavored-constant")) {
      s.disfavored_constant = j.at("disfavored-constant").get<double>();
    }
    str_key("full-stop-tag", s.full_stop_tag);
    str_key("vcli-tag", s.vcli_tag);
    str_key("numeral-tag", s.numeral_tag);
    str_key("punct-tag", s.punct_tag);
    str_key("schedule", s.schedule);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("{}: {}", path, e.what()));
  }
}

std::optional<std::string> find_config_arg(std::span<const std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return std::nullopt;
}

void require_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw UsageError(fmt::format("--{} is required", what));
  if (!fs::is_regular_file(path)) throw UsageError(fmt::format("no such file: {}", path));
}

void check_optional_file(const std::string& path) {
  if (!path.empty() && !fs::is_regular_file(path)) {
    throw UsageError(fmt::format("no such file: {}", path));
  }
}

void check_inputs(const Settings& s) {
  for (const auto& p : s.inputs) {
    if (!fs::is_regular_file(p)) throw UsageError(fmt::format("no such file: {}", p));
  }
  for (const auto* p : {&s.tagset, &s.lexicon, &s.suffixes, &s.biases, &s.mwu, &s.abbrev,
                        &s.postedit, &s.model, &s.test}) {
    check_optional_file(*p);
  }
}

PipelineConfig pipeline_config(const Settings& s) {
  PipelineConfig c;
  c.full_stop_tag = s.full_stop_tag;
  c.vcli_tag = s.vcli_tag;
  if (!s.numeral_tag.empty()) c.numeral_tag = s.numeral_tag;
  if (!s.punct_tag.empty()) c.punct_tag = s.punct_tag;
  c.exclusion_tags = s.exclude_tags;
  c.train.iterations = s.iterations;
  c.train.smoothing_floor = s.floor;
  return c;
}

std::vector<std::string> load_list(const std::string& path) {
  if (path.empty()) return {};
  return parse_list(read_file(path));
}

Resources load_resources(const Settings& s, const Tagset& tagset) {
  Resources r{.tagset = tagset,
              .lexicon = {},
              .suffixes = {},
              .multiwords = load_list(s.mwu),
              .abbreviations = load_list(s.abbrev),
              .postedit_rules = {},
              .config = pipeline_config(s)};
  if (!s.lexicon.empty()) r.lexicon = parse_lexicon(read_file(s.lexicon), tagset);
  if (!s.suffixes.empty()) r.suffixes = load_suffixes(read_file(s.suffixes), tagset);
  if (!s.postedit.empty()) {
    r.postedit_rules = parse_postedit_rules(read_file(s.postedit), tagset);
  }
  for (const auto* tag : {&r.config.full_stop_tag}) {
    if (!tagset.contains(*tag)) {
      throw FormatError(fmt::format("full-stop tag '{}' is not in the tagset", *tag));
    }
  }
  return r;
}

std::vector<std::size_t> parse_schedule(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto field : split_fields(text, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw UsageError(fmt::format("bad schedule '{}'", text));
    }
    out.push_back(v);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw UsageError("schedule must be strictly increasing");
  }
  return out;
}

std::string checkpoint_name(std::size_t files) {
  return files == 0 ? "model-untrained.hmm" : fmt::format("model-001-{:03}.hmm", files);
}

int cmd_tokenize(const Settings& s, std::ostream& out) {
  const auto mwus = load_list(s.mwu);
  const auto abbrevs = load_list(s.abbrev);
  const Tokenizer tokenizer(abbrevs);
  std::size_t index = 0;
  for (const auto& sentence :
       tokenizer.tokenize(preprocess_multiwords(read_file(s.inputs.front()), mwus))) {
    ++index;
    for (const auto& tok : sentence.tokens) {
      out << index << '\t' << tok.position << '\t' << to_string(tok.kind) << '\t' << tok.text
          << '\n';
    }
  }
  return kOk;
}

int cmd_train(const Settings& s, std::ostream& out) {
  require_file(s.tagset, "tagset");
  if (s.out.empty()) throw UsageError("--out is required");
  if (s.schedule.empty()) throw UsageError("--schedule is required");
  const auto schedule = parse_schedule(s.schedule);
  if (schedule.back() > s.inputs.size()) {
    throw UsageError(fmt::format("schedule point {} exceeds the {} corpus files",
                                 schedule.back(), s.inputs.size()));
  }
  const Tagset tagset = parse_tagset(read_file(s.tagset));
  const Resources r = load_resources(s, tagset);
  BiasSpec biases;
  if (!s.biases.empty()) {
    biases = parse_biases(read_file(s.biases), tagset,
                          {.favored_weight = s.favored_weight,
                           .disfavored_constant = s.disfavored_constant});
  }
  std::vector<CorpusFile> corpus;
  for (const auto& p : s.inputs) corpus.push_back({p, read_file(p)});
  std::optional<std::string> gold;
  if (!s.test.empty()) gold = read_file(s.test);

  const TrainRun run = train_incremental(corpus, r, biases, schedule, gold);
  fs::create_directories(s.out);
  for (std::size_t i = 0; i < run.checkpoints.size(); ++i) {
    write_file(fs::path(s.out) / checkpoint_name(run.block_boundaries[i]),
               serialize_model(run.checkpoints[i]));
  }
  const std::string text = emit_curve_text(run);
  write_file(fs::path(s.out) / "curve.txt", text);
  write_file(fs::path(s.out) / "curve.csv", emit_curve_csv(run));
  out << text;
  return kOk;
}

int cmd_tag(const Settings& s, std::ostream& out) {
  require_file(s.model, "model");
  const HmmModel model = deserialize_model(read_file(s.model));
  const Resources r = load_resources(s, model.tagset());
  out << tag_text(model, r, read_file(s.inputs.front()));
  return kOk;
}

int cmd_guess_train(const Settings& s, std::ostream& out) {
  require_file(s.tagset, "tagset");
  require_file(s.lexicon, "lexicon");
  if (s.suffix_limit == 0) throw UsageError("--suffix-limit must be at least 1");
  const Tagset tagset = parse_tagset(read_file(s.tagset));
  const Lexicon lexicon = parse_lexicon(read_file(s.lexicon), tagset);
  const auto mwus = load_list(s.mwu);
  const Tokenizer tokenizer(load_list(s.abbrev));
  std::vector<std::string> words;
  for (const auto& p : s.inputs) {
    for (const auto& sentence : tokenizer.tokenize(preprocess_multiwords(read_file(p), mwus))) {
      for (const auto& tok : sentence.tokens) {
        if (tok.kind == TokenKind::kWord || tok.kind == TokenKind::kMultiword) {
          words.push_back(tok.text);
        }
      }
    }
  }
  const SuffixTable table =
      train_guesser(words, lexicon, registry_from_lexicon(lexicon, tagset),
                    {.suffix_limit = s.suffix_limit, .min_support = s.min_support});
  const std::string text = serialize_suffixes(table);
  if (s.out.empty()) {
    out << text;
  } else {
    write_file(s.out, text);
  }
  return kOk;
}

int cmd_suffix_stats(const Settings& s, std::ostream& out) {
  require_file(s.tagset, "tagset");
  const Tagset tagset = parse_tagset(read_file(s.tagset));
  std::vector<std::vector<std::string>> columns;
  for (const auto& p : s.inputs) {
    const SuffixTable table = load_suffixes(read_file(p), tagset);
    const SuffixStats st = suffix_stats(table);
    const bool learned = !table.empty() && table.entries().begin()->second.provenance ==
                                               Provenance::kLearned;
    columns.push_back({fs::path(p).filename().string(), learned ? "learned" : "manual",
                       std::to_string(st.num_suffixes), std::to_string(st.max_suffix_len),
                       std::to_string(st.total_tags), fmt::format("{:.1f}", st.tags_per_suffix),
                       std::to_string(st.enclitic_suffixes),
                       std::to_string(st.foreign_suffixes)});
  }
  static constexpr const char* kRows[] = {
      "Suffix file",     "Model",           "Number of suffixes", "Maximum suffix length",
      "Total number of tags", "Tags per suffix", "Enclitic suffixes", "Foreign-word suffixes"};
  for (std::size_t r = 0; r < std::size(kRows); ++r) {
    out << fmt::format("{:<24}", kRows[r]);
    for (const auto& c : columns) out << fmt::format(" {:>14}", c[r]);
    out << '\n';
  }
  return kOk;
}

int cmd_eval(const Settings& s, std::ostream& out) {
  if (s.inputs.size() != 2) throw UsageError("eval takes SYSTEM and GOLD files");
  const EvalReport rep =
      evaluate(read_file(s.inputs[0]), read_file(s.inputs[1]), s.exclude_tags);
  out << fmt::format("tokens: {}\n", rep.token_count);
  out << fmt::format("errors: {} - {}\n", rep.errors_all, rep.errors_excl);
  out << fmt::format("accuracy: {:.2f} - {:.2f}\n", rep.accuracy_all, rep.accuracy_excl);
  out << fmt::format("accuracy over non-excluded tokens: {:.2f} ({} tokens)\n",
                     rep.accuracy_reduced, rep.token_count - rep.excluded_tokens);
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Ambiguity-class HMM part-of-speech tagger", "actag"};
  app.require_subcommand(1);
  app.add_option("--config", s.config, "JSON file with defaults for the flags below");
  app.add_option("--tagset", s.tagset, "Tagset file");
  app.add_option("--lexicon", s.lexicon, "Lexicon file");
  app.add_option("--suffixes", s.suffixes, "Suffix table (manual or learned)");
  app.add_option("--biases", s.biases, "Symbol and transition biases");
  app.add_option("--mwu", s.mwu, "Multiword unit list");
  app.add_option("--abbrev", s.abbrev, "Abbreviation list");
  app.add_option("--postedit", s.postedit, "Postedit rules");
  std::string exclude_flag;
  auto* exclude_opt = app.add_option("--exclude-tags", exclude_flag,
                                     "Comma-separated gold tags left out of the second figure");
  app.add_option("--suffix-limit", s.suffix_limit, "Maximum learned suffix length");
  app.add_option("--min-support", s.min_support, "Minimum corpus support per suffix");
  app.add_option("--iterations", s.iterations, "Baum-Welch iterations")
      ->check(CLI::PositiveNumber);
  app.add_option("--floor", s.floor, "Smoothing floor")->check(CLI::NonNegativeNumber);
  app.add_option("--favored-weight", s.favored_weight, "Default favored bias multiplier");
  app.add_option("--disfavored-constant", s.disfavored_constant,
                 "Default disfavored transition value");
  app.add_option("--full-stop-tag", s.full_stop_tag, "Tag for sentence-final full stops");
  app.add_option("--vcli-tag", s.vcli_tag, "Tag for verb+enclitic forms");
  app.add_option("--numeral-tag", s.numeral_tag, "Tag for numbers and dates");
  app.add_option("--punct-tag", s.punct_tag, "Tag for unknown punctuation");
  app.add_option("--schedule", s.schedule, "Cumulative file counts, e.g. 3,6,9");
  app.add_option("--out", s.out, "Output directory (train) or file (guess-train)");
  app.add_option("--model", s.model, "Model file");
  app.add_option("--test", s.test, "Gold test file in word_TAG format");

  auto* tokenize = app.add_subcommand("tokenize", "Print tokens and sentences");
  tokenize->add_option("input", s.inputs, "Text file")->required()->expected(1);
  auto* train = app.add_subcommand("train", "Incremental Baum-Welch training");
  train->add_option("corpus", s.inputs, "Corpus files in order")->required();
  auto* tag = app.add_subcommand("tag", "Tag raw text");
  tag->add_option("input", s.inputs, "Text file")->required()->expected(1);
  auto* guess = app.add_subcommand("guess-train", "Learn a suffix table from a corpus");
  guess->add_option("corpus", s.inputs, "Corpus files")->required();
  auto* stats = app.add_subcommand("suffix-stats", "Compare suffix tables");
  stats->add_option("files", s.inputs, "Suffix files")->required();
  auto* eval = app.add_subcommand("eval", "Score tagged output against a gold file");
  eval->add_option("files", s.inputs, "SYSTEM GOLD")->required()->expected(2);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    if (auto cfg = find_config_arg(args)) {
      if (!fs::is_regular_file(*cfg)) throw UsageError(fmt::format("no such file: {}", *cfg));
      apply_config(*cfg, s);
    }
    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
      app.parse(rest);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsageError;
    }
    if (exclude_opt->count() > 0) {
      s.exclude_tags.clear();
      for (auto tag : split_fields(exclude_flag, ',')) {
        if (!tag.empty()) s.exclude_tags.emplace_back(tag);
      }
    }
    check_inputs(s);
    if (tokenize->parsed()) return cmd_tokenize(s, out);
    if (train->parsed()) return cmd_train(s, out);
    if (tag->parsed()) return cmd_tag(s, out);
    if (guess->parsed()) return cmd_guess_train(s, out);
    if (stats->parsed()) return cmd_suffix_stats(s, out);
    if (eval->parsed()) return cmd_eval(s, out);
    return kUsageError;
  } catch (const UsageError& e) {
    err << "actag: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericError& e) {
    err << "actag: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "actag: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace actag::cli
